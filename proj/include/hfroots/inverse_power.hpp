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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hfroots {

using cplx = std::complex<double>;

struct InversePowerOptions {
  int iterations = 50;
  /// Shifts whose (A - sI) has a larger 2-norm condition number are rejected.
  double condition_limit = 1e12;
  /// Converged when ||A x - rho x|| <= tol * (1 + ||A||).
  double convergence_tol = 1e-8;
  /// Keep every iterate in FilteredState::history.
  bool keep_history = false;
  /// Retry shift offset and attempt count for non-converged samples.
  cplx retry_delta = 0.1;
  int max_retries = 3;
};

struct FilteredState {
  /// Shift actually used (after retries).
  cplx shift;
  cplx requested_shift;
  /// Unit-norm final iterate.
  Eigen::VectorXcd state;
  /// Rayleigh quotient x^H A x.
  cplx rayleigh;
  double residual = 0.0;
  double condition_number = 0.0;
  bool converged = false;
  int retries = 0;
  /// Normalized iterates x_0 .. x_N when requested.
  std::vector<Eigen::VectorXcd> history;
};

/// N steps of x_k = (A - sI)^-1 x_{k-1} / ||.||. Each step solves the doubled
/// Hermitian system [[0, B], [B^H, 0]] (y; x) = (x_{k-1}; 0), B = A - sI, with a
/// dense LU factorization. Throws NumericError when the shift is (nearly) an
/// eigenvalue; the message carries the condition number.
FilteredState inverse_power(const Eigen::MatrixXcd& a, cplx shift, const Eigen::VectorXcd& psi0,
                            const InversePowerOptions& opts = {});

/// inverse_power per sample; samples that do not converge are retried at
/// shift + retry_delta (repeatedly, up to max_retries).
std::vector<FilteredState> inverse_power_filter(const Eigen::MatrixXcd& a, const std::vector<cplx>& shifts,
                                                const Eigen::VectorXcd& psi0, const InversePowerOptions& opts = {});

}  // namespace hfroots
