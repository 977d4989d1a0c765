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

#include "hfroots/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace hfroots {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

}  // namespace

Eigen::MatrixXcd BlockEncoding::block() const {
  const Eigen::Index dim = Eigen::Index{1} << signal_qubits;
  return unitary.topLeftCorner(dim, dim);
}

Eigen::MatrixXcd BlockEncoding::decoded() const {
  return block() * (static_cast<double>(Eigen::Index{1} << signal_qubits) / alpha);
}

double BlockEncoding::unitarity_error() const {
  const Eigen::MatrixXcd d = unitary.adjoint() * unitary - Eigen::MatrixXcd::Identity(unitary.rows(), unitary.cols());
  return d.cwiseAbs().maxCoeff();
}

int qubits_for(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("dimension must be positive");
  return log2_exact(dim);
}

Eigen::MatrixXcd pad_to_power_of_two(const Eigen::MatrixXcd& a, cplx fill) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index dim = Eigen::Index{1} << qubits_for(a.rows());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  for (Eigen::Index k = a.rows(); k < dim; ++k) out(k, k) = fill;
  return out;
}

double default_alpha(const Eigen::MatrixXcd& a) {
  const double m = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  return m > 1.0 ? 1.0 / m : 1.0;
}

Eigen::MatrixXcd query_oracle(const Eigen::MatrixXcd& a, double alpha) {
  if (a.rows() != a.cols() || !is_power_of_two(a.rows())) {
    throw std::domain_error("query oracle needs a square 2^n matrix");
  }
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
  const Eigen::Index n = a.rows();
  const Eigen::Index half = n * n;
  Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(2 * half, 2 * half);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx v = alpha * a(i, j);
      const double mag = std::abs(v);
      if (mag > 1.0 + 1e-12) throw std::domain_error("alpha * |a_ij| exceeds 1");
      double theta = 0.0;
      double phi = 0.0;
      if (v.imag() == 0.0) {
        theta = std::acos(std::clamp(v.real(), -1.0, 1.0));
      } else {
        theta = std::acos(std::min(mag, 1.0));
        phi = std::arg(v);
      }
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const Eigen::Index k0 = i * n + j;
      const Eigen::Index k1 = half + k0;
      o(k0, k0) = c * std::polar(1.0, phi);
      o(k0, k1) = -s;
      o(k1, k0) = s;
      o(k1, k1) = c * std::polar(1.0, -phi);
    }
  }
  return o;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Eigen::MatrixXcd hadamard_power(int n) {
  Eigen::MatrixXcd h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, h);
  return out;
}

Eigen::MatrixXcd assemble_ua(const Eigen::MatrixXcd& oracle, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index total = 2 * dim * dim;
  if (oracle.rows() != total || oracle.cols() != total) {
    throw std::invalid_argument("oracle size does not match 1 + 2n qubits");
  }
  const Eigen::MatrixXcd h = kron(kron(Eigen::MatrixXcd::Identity(2, 2), hadamard_power(n)),
                                  Eigen::MatrixXcd::Identity(dim, dim));
  // SWAP of the two n-qubit registers as an index permutation.
  Eigen::MatrixXcd swapped(total, total);
  for (Eigen::Index anc = 0; anc < 2; ++anc) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        swapped.row(anc * dim * dim + j * dim + i) = oracle.row(anc * dim * dim + i * dim + j);
      }
    }
  }
  return h * swapped * h;
}

BlockEncoding block_encode(const Eigen::MatrixXcd& a, std::optional<double> alpha) {
  BlockEncoding be;
  be.source = pad_to_power_of_two(a);
  be.signal_qubits = qubits_for(be.source.rows());
  be.ancilla_qubits = be.signal_qubits + 1;
  be.alpha = alpha.value_or(default_alpha(be.source));
  be.unitary = assemble_ua(query_oracle(be.source, be.alpha), be.signal_qubits);
  return be;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp needs a square matrix");
  const Eigen::MatrixXcd arg = cplx(0.0, -1.0) * m;
  return arg.exp();
}

}  // namespace hfroots
