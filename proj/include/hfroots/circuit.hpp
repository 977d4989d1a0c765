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

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfroots/block_encoding.hpp"

namespace hfroots {

/// Gate names: "H", "RY", "RZ", "CNOT", "SWAP".
///   RY(b) = [[cos b/2, -sin b/2], [sin b/2, cos b/2]]
///   RZ(g) = diag(e^{-i g/2}, e^{i g/2})
/// CNOT has one control and one target, SWAP two targets.
struct Gate {
  std::string name;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;

  bool operator==(const Gate&) const = default;
};

/// Qubit 0 is the most significant bit of a basis index.
struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  std::size_t count(const std::string& name) const;
};

/// Applies `g` in place; throws std::invalid_argument on malformed gates.
void apply_gate(const Gate& g, Eigen::VectorXcd& state, int num_qubits);

/// Unitary of the circuit, gates applied in list order.
Eigen::MatrixXcd circuit_unitary(const Circuit& c);

struct FableCircuit {
  Circuit circuit;
  int signal_qubits = 0;
  double alpha = 1.0;
  /// Padded matrix that was encoded.
  Eigen::MatrixXcd source;
  std::size_t rotations_before = 0;
  std::size_t rotations_after = 0;
  std::size_t cnots_before = 0;
  std::size_t cnots_after = 0;

  /// Simulates the circuit into a BlockEncoding with the standard layout.
  BlockEncoding encoding() const;
};

/// Compressed oracle circuit: the query oracle is replaced by uniformly
/// controlled rotations in Walsh-Hadamard/Gray-code form, rotations with
/// |angle| <= prune_tol are dropped and CNOTs left adjacent are cancelled.
/// prune_tol = 0 keeps every rotation.
FableCircuit fable_compress(const Eigen::MatrixXcd& a, double prune_tol, std::optional<double> alpha = std::nullopt);
template <typename Derived>
FableCircuit fable_compress(const Eigen::MatrixBase<Derived>& a, double prune_tol,
                            std::optional<double> alpha = std::nullopt) {
  return fable_compress(Eigen::MatrixXcd(a.template cast<cplx>()), prune_tol, alpha);
}

/// Walsh-Hadamard transform (unnormalized, natural ordering).
std::vector<double> walsh_hadamard(std::vector<double> v);

/// Binary reflected Gray code.
inline std::size_t gray_code(std::size_t k) { return k ^ (k >> 1); }

}  // namespace hfroots
