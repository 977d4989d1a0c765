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
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace hfroots {

using cplx = std::complex<double>;

/// Register layout of every block encoding in this library, qubit 0 being the
/// most significant bit of a basis index:
///
///   qubit 0            rotation ancilla
///   qubits 1 .. n      row-select register
///   qubits n+1 .. 2n   signal register
///
/// so the top-left 2^n x 2^n block of U is the slice with all n+1 ancillas in |0>.
struct BlockEncoding {
  Eigen::MatrixXcd unitary;
  int ancilla_qubits = 0;
  int signal_qubits = 0;
  /// Scale applied before encoding; the block holds alpha * A / 2^n.
  double alpha = 1.0;
  /// The (padded) matrix that was encoded.
  Eigen::MatrixXcd source;

  /// <0|<0^n| U |0>|0^n>, i.e. the 2^n x 2^n top-left block.
  Eigen::MatrixXcd block() const;
  /// block() * 2^n / alpha; equals `source` up to round-off.
  Eigen::MatrixXcd decoded() const;
  /// ||U^H U - I||_max.
  double unitarity_error() const;
};

/// Number of qubits needed for dimension `dim` (rounded up to a power of two).
int qubits_for(Eigen::Index dim);

/// Embeds `a` in the top-left corner of a 2^n matrix, filling the diagonal of the
/// padding with `fill` (0 for plain encodings, 1 for unitaries).
Eigen::MatrixXcd pad_to_power_of_two(const Eigen::MatrixXcd& a, cplx fill = 0.0);

/// Largest scale alpha <= 1 with alpha * max|a_ij| <= 1.
double default_alpha(const Eigen::MatrixXcd& a);

/// Query oracle O_A on 1 + 2n qubits: for every (i, j) a 2x2 rotation
///   [[c e^{i phi}, -s], [s, c e^{-i phi}]],  c = cos(theta), s = sin(theta),
/// acting on the ancilla with theta = arccos(alpha a_ij) for real entries, or
/// theta = arccos|alpha a_ij| and phi = arg(a_ij) for complex ones.
/// Throws std::domain_error if alpha * max|a_ij| > 1 or the size is not 2^n.
Eigen::MatrixXcd query_oracle(const Eigen::MatrixXcd& a, double alpha = 1.0);

/// U_A = (I ⊗ H^n ⊗ I)(I ⊗ SWAP)(O_A)(I ⊗ H^n ⊗ I) for `n` signal qubits.
Eigen::MatrixXcd assemble_ua(const Eigen::MatrixXcd& oracle, int n);

/// Pads, picks alpha (default_alpha when unset), builds O_A and U_A.
BlockEncoding block_encode(const Eigen::MatrixXcd& a, std::optional<double> alpha = std::nullopt);
template <typename Derived>
BlockEncoding block_encode(const Eigen::MatrixBase<Derived>& a, std::optional<double> alpha = std::nullopt) {
  return block_encode(Eigen::MatrixXcd(a.template cast<cplx>()), alpha);
}

/// exp(-i m), by scaling and squaring.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m);
template <typename Derived>
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixBase<Derived>& m) {
  return matrix_exp(Eigen::MatrixXcd(m.template cast<cplx>()));
}

/// Kronecker product.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// n-fold tensor power of the Hadamard gate.
Eigen::MatrixXcd hadamard_power(int n);

}  // namespace hfroots
