// Copyright 2026 The hfroots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hfroots/inverse_power.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "hfroots/errors.hpp"

namespace hfroots {

FilteredState inverse_power(const Eigen::MatrixXcd& a, cplx shift, const Eigen::VectorXcd& psi0,
                            const InversePowerOptions& opts) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw std::invalid_argument("inverse power needs a square matrix");
  if (psi0.size() != a.rows()) throw std::invalid_argument("initial state has the wrong length");
  if (psi0.norm() == 0.0) throw std::invalid_argument("initial state is zero");
  if (opts.iterations < 0) throw std::invalid_argument("iteration count must be non-negative");
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXcd b = a - shift * Eigen::MatrixXcd::Identity(n, n);

  FilteredState out;
  out.shift = shift;
  out.requested_shift = shift;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(b).singularValues();
  out.condition_number = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
  if (!(out.condition_number <= opts.condition_limit)) {
    std::ostringstream msg;
    msg << "shift " << shift << " is numerically an eigenvalue (condition number " << out.condition_number << ")";
    throw NumericError(msg.str());
  }

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = b;
  h.bottomLeftCorner(n, n) = b.adjoint();
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(h);

  Eigen::VectorXcd x = psi0.normalized();
  if (opts.keep_history) out.history.push_back(x);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * n);
  for (int k = 0; k < opts.iterations; ++k) {
    rhs.head(n) = x;
    const Eigen::VectorXcd sol = lu.solve(rhs);
    x = sol.tail(n);
    const double norm = x.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("inverse power iterate degenerated");
    x /= norm;
    if (opts.keep_history) out.history.push_back(x);
  }
  out.state = x;
  const Eigen::VectorXcd ax = a * x;
  out.rayleigh = x.dot(ax);
  out.residual = (ax - out.rayleigh * x).norm();
  out.converged = out.residual <= opts.convergence_tol * (1.0 + a.norm());
  return out;
}

std::vector<FilteredState> inverse_power_filter(const Eigen::MatrixXcd& a, const std::vector<cplx>& shifts,
                                                const Eigen::VectorXcd& psi0, const InversePowerOptions& opts) {
  std::vector<FilteredState> out;
  out.reserve(shifts.size());
  for (const cplx s : shifts) {
    FilteredState st = inverse_power(a, s, psi0, opts);
    for (int r = 1; !st.converged && r <= opts.max_retries; ++r) {
      st = inverse_power(a, s + static_cast<double>(r) * opts.retry_delta, psi0, opts);
      st.requested_shift = s;
      st.retries = r;
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace hfroots
