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

#include "hfroots/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hfroots {

namespace {

std::size_t bit_of(int qubit, int num_qubits) {
  return std::size_t{1} << static_cast<unsigned>(num_qubits - 1 - qubit);
}

void check_qubit(int q, int num_qubits) {
  if (q < 0 || q >= num_qubits) throw std::invalid_argument("gate qubit out of range");
}

// 2x2 gate on `target`, applied only where every control bit is set.
void apply_single(const Eigen::Matrix2cd& u, int target, const std::vector<int>& controls, Eigen::VectorXcd& state,
                  int num_qubits) {
  const std::size_t tbit = bit_of(target, num_qubits);
  std::size_t cmask = 0;
  for (int c : controls) cmask |= bit_of(c, num_qubits);
  const auto dim = static_cast<std::size_t>(state.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & tbit) != 0 || (i & cmask) != cmask) continue;
    const std::size_t j = i | tbit;
    const cplx a0 = state(static_cast<Eigen::Index>(i));
    const cplx a1 = state(static_cast<Eigen::Index>(j));
    state(static_cast<Eigen::Index>(i)) = u(0, 0) * a0 + u(0, 1) * a1;
    state(static_cast<Eigen::Index>(j)) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

// Emits a uniformly controlled rotation on qubit 0 with the given per-control
// angles; bit b of the control value lives on qubit `num_controls - b`.
void emit_uniform_rotation(const std::string& name, const std::vector<double>& angles, int num_controls,
                           std::vector<Gate>& out) {
  const std::size_t count = angles.size();
  const std::vector<double> wht = walsh_hadamard(angles);
  const double scale = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(Gate{name, {0}, {}, wht[gray_code(i)] * scale});
    const int b = (i + 1 == count) ? num_controls - 1 : std::countr_zero(i + 1);
    out.push_back(Gate{"CNOT", {0}, {num_controls - b}, 0.0});
  }
}

// Drops small rotations, then cancels CNOT pairs that became adjacent.
std::vector<Gate> prune(const std::vector<Gate>& gates, double tol) {
  std::vector<Gate> out;
  std::map<int, int> pending;  // control -> parity of the current CNOT run
  auto flush = [&] {
    for (const auto& [c, parity] : pending) {
      if (parity % 2 != 0) out.push_back(Gate{"CNOT", {0}, {c}, 0.0});
    }
    pending.clear();
  };
  for (const Gate& g : gates) {
    if (g.name == "CNOT") {
      ++pending[g.controls.front()];
      continue;
    }
    if ((g.name == "RY" || g.name == "RZ") && std::abs(g.angle) <= tol) continue;
    flush();
    out.push_back(g);
  }
  flush();
  return out;
}

}  // namespace

std::size_t Circuit::count(const std::string& name) const {
  return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.name == name; }));
}

void apply_gate(const Gate& g, Eigen::VectorXcd& state, int num_qubits) {
  for (int q : g.targets) check_qubit(q, num_qubits);
  for (int q : g.controls) check_qubit(q, num_qubits);
  if (g.name == "SWAP") {
    if (g.targets.size() != 2 || !g.controls.empty()) throw std::invalid_argument("SWAP needs two targets");
    const std::size_t a = bit_of(g.targets[0], num_qubits);
    const std::size_t b = bit_of(g.targets[1], num_qubits);
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.size()); ++i) {
      if ((i & a) != 0 && (i & b) == 0) {
        std::swap(state(static_cast<Eigen::Index>(i)), state(static_cast<Eigen::Index>((i & ~a) | b)));
      }
    }
    return;
  }
  if (g.targets.size() != 1) throw std::invalid_argument("gate " + g.name + " needs one target");
  Eigen::Matrix2cd u;
  if (g.name == "H") {
    const double r = 1.0 / std::sqrt(2.0);
    u << r, r, r, -r;
  } else if (g.name == "RY") {
    const double c = std::cos(g.angle / 2);
    const double s = std::sin(g.angle / 2);
    u << c, -s, s, c;
  } else if (g.name == "RZ") {
    u << std::polar(1.0, -g.angle / 2), 0.0, 0.0, std::polar(1.0, g.angle / 2);
  } else if (g.name == "CNOT") {
    if (g.controls.size() != 1) throw std::invalid_argument("CNOT needs one control");
    u << 0.0, 1.0, 1.0, 0.0;
  } else {
    throw std::invalid_argument("unknown gate '" + g.name + "'");
  }
  apply_single(u, g.targets.front(), g.controls, state, num_qubits);
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  if (c.num_qubits < 0 || c.num_qubits > 14) throw std::invalid_argument("circuit too large to simulate densely");
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::VectorXcd v = u.col(col);
    for (const Gate& g : c.gates) apply_gate(g, v, c.num_qubits);
    u.col(col) = v;
  }
  return u;
}

std::vector<double> walsh_hadamard(std::vector<double> v) {
  if (v.empty() || (v.size() & (v.size() - 1)) != 0) throw std::invalid_argument("WHT length must be 2^k");
  for (std::size_t h = 1; h < v.size(); h *= 2) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
  return v;
}

BlockEncoding FableCircuit::encoding() const {
  BlockEncoding be;
  be.unitary = circuit_unitary(circuit);
  be.signal_qubits = signal_qubits;
  be.ancilla_qubits = signal_qubits + 1;
  be.alpha = alpha;
  be.source = source;
  return be;
}

FableCircuit fable_compress(const Eigen::MatrixXcd& a, double prune_tol, std::optional<double> alpha) {
  if (prune_tol < 0.0) throw std::invalid_argument("prune tolerance must be non-negative");
  FableCircuit out;
  out.source = pad_to_power_of_two(a);
  const int n = qubits_for(out.source.rows());
  out.signal_qubits = n;
  out.alpha = alpha.value_or(default_alpha(out.source));
  const Eigen::Index dim = out.source.rows();
  const auto entries = static_cast<std::size_t>(dim * dim);

  std::vector<double> ry(entries);
  std::vector<double> rz(entries);
  bool complex_entries = false;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const cplx v = out.alpha * out.source(i, j);
      if (std::abs(v) > 1.0 + 1e-12) throw std::domain_error("alpha * |a_ij| exceeds 1");
      const auto c = static_cast<std::size_t>(i * dim + j);
      if (v.imag() == 0.0) {
        ry[c] = 2.0 * std::acos(std::clamp(v.real(), -1.0, 1.0));
      } else {
        complex_entries = true;
        ry[c] = 2.0 * std::acos(std::min(std::abs(v), 1.0));
        rz[c] = -std::arg(v);
      }
    }
  }

  std::vector<Gate> oracle;
  const int controls = 2 * n;
  if (complex_entries) emit_uniform_rotation("RZ", rz, controls, oracle);
  emit_uniform_rotation("RY", ry, controls, oracle);
  if (complex_entries) emit_uniform_rotation("RZ", rz, controls, oracle);

  const std::size_t stages = complex_entries ? 3 : 1;
  out.rotations_before = stages * entries;
  out.cnots_before = stages * entries;
  const std::vector<Gate> pruned = prune(oracle, prune_tol);

  Circuit& circ = out.circuit;
  circ.num_qubits = 1 + 2 * n;
  for (int q = 1; q <= n; ++q) circ.gates.push_back(Gate{"H", {q}, {}, 0.0});
  circ.gates.insert(circ.gates.end(), pruned.begin(), pruned.end());
  for (int q = 1; q <= n; ++q) circ.gates.push_back(Gate{"SWAP", {q, n + q}, {}, 0.0});
  for (int q = 1; q <= n; ++q) circ.gates.push_back(Gate{"H", {q}, {}, 0.0});
  out.rotations_after = circ.count("RY") + circ.count("RZ");
  out.cnots_after = circ.count("CNOT");
  return out;
}

}  // namespace hfroots
