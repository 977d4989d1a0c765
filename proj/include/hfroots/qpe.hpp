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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfroots/block_encoding.hpp"

namespace hfroots {

/// Affine map M -> (M - center) / radius applied before exponentiation, so an
/// eigenvalue lambda of M becomes the phase ((-(lambda - center) / radius) mod 2 pi) / 2 pi.
struct SpectralWindow {
  double center = 0.0;
  double radius = 1.0;

  double to_scaled(double lambda) const { return (lambda - center) / radius; }
  double from_scaled(double s) const { return center + radius * s; }
};

/// Window placing the real parts of the (numerically) real eigenvalues of `m`
/// in [-0.9 pi, 0.9 pi]. Falls back to all eigenvalues when none is real.
SpectralWindow default_window(const Eigen::MatrixXcd& m);

/// Controlled powers W^(2^k), W = exp(-i (M - c) / r), k = 0 .. bits-1, each
/// realized as a simulated block encoding. The matching |0>-branch operator is
/// a block encoding of alpha_k I so the two branches carry the same scale.
///
/// When W has eigenvalues of modulus e^g > 1, W^(2^k) = e^(2^k g) V_k and only
/// V_k is encoded; the |0> branch then holds alpha_k e^(-2^k g) I, which keeps
/// the branch ratio exact without overflowing.
struct PhaseOracle {
  int bits = 0;
  int signal_qubits = 0;
  Eigen::Index dimension = 0;
  SpectralWindow window;
  /// (M - c) / r, unpadded.
  Eigen::MatrixXcd scaled;
  /// max(0, max Im) over the eigenvalues of `scaled`.
  double growth_rate = 0.0;
  std::vector<double> alphas;
  /// Extracted top-left blocks: alpha_k W^(2^k) / 2^n and alpha_k I / 2^n.
  std::vector<Eigen::MatrixXcd> power_blocks;
  std::vector<Eigen::MatrixXcd> balance_blocks;
  /// Largest ||U^H U - I||_max over all simulated encodings.
  double max_unitarity_error = 0.0;
};

/// Throws ResourceLimitExceeded when bits or dimension exceed the simulator.
PhaseOracle make_phase_oracle(const Eigen::MatrixXcd& m, int bits, std::optional<SpectralWindow> window = std::nullopt);
template <typename Derived>
PhaseOracle make_phase_oracle(const Eigen::MatrixBase<Derived>& m, int bits,
                              std::optional<SpectralWindow> window = std::nullopt) {
  return make_phase_oracle(Eigen::MatrixXcd(m.template cast<cplx>()), bits, window);
}

/// Post-selected register state after the inverse QFT: outcome k carries the
/// signal vector amplitudes[k]. True amplitudes are amplitudes[k] * 10^(log10_scale / 2).
struct RegisterOutcomes {
  std::vector<Eigen::VectorXcd> amplitudes;
  double log10_scale = 0.0;
  /// Sum of ||amplitudes[k]||^2.
  double total() const;
};

RegisterOutcomes register_outcomes(const PhaseOracle& oracle, const Eigen::VectorXcd& psi);

/// t-bit string of `index`, most significant bit (j_1) first.
std::string phase_bits(std::uint64_t index, int bits);

struct PhasePeak {
  std::uint64_t index = 0;
  std::string bits;
  double phase = 0.0;
  double eigenvalue = 0.0;
  /// Probability within +-1 bin of the centre.
  double mass = 0.0;
  /// mass / (mass + probability 2..4 bins away).
  double sharpness = 0.0;
  bool sharp = false;
};

/// dense: apply the extracted blocks to the signal vector.
/// spectral: the same operators applied in the eigenbasis of M, with input
///   components below 1e-12 (relative) dropped; needed once e^(2^t g)
///   amplifies round-off beyond the signal.
/// automatic: dense unless 2^t g > ln(1e6).
enum class QpeEngine { automatic, dense, spectral };

std::string engine_name(QpeEngine e);

struct QpeOptions {
  std::optional<SpectralWindow> window;
  QpeEngine engine = QpeEngine::automatic;
  /// Peaks below this sharpness count as diffuse.
  double sharp_threshold = 0.5;
  /// Smallest mass reported as a peak.
  double min_peak_mass = 0.02;
  /// Flag as complex when the sharp mass falls below this (only for bits >= 6).
  double flat_threshold = 0.5;
};

struct QpeResult {
  int bits = 0;
  SpectralWindow window;
  QpeEngine engine = QpeEngine::dense;
  /// Outcome probabilities after post-selection; sums to 1.
  std::vector<double> distribution;
  PhasePeak modal;
  std::vector<PhasePeak> peaks;
  double sharp_mass = 0.0;
  /// 1 - sharp_mass.
  double flatness = 0.0;
  bool complex_flag = false;
  /// log10 of the ancilla post-selection probability (dense engine only).
  std::optional<double> log10_success;
};

QpeResult qpe_simulate(const PhaseOracle& oracle, const Eigen::VectorXcd& psi0, const QpeOptions& opts = {});
QpeResult qpe_simulate(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& psi0, int bits, const QpeOptions& opts = {});

/// Phase k / 2^t mapped back through the window, wrapped to (-pi, pi] first.
double decode_eigenvalue(std::uint64_t index, int bits, const SpectralWindow& w);

struct BranchAttenuation {
  /// exp(2^k Im(mu) / r) for eigenvalue mu of M.
  double predicted = 0.0;
  /// ||P_1 v|| / ||P_0 v|| from the simulated |1> and |0> branch blocks.
  double simulated = 0.0;
};

/// Weight of the |1> branch relative to the |0> branch after the controlled
/// W^(2^k) acts on eigenvector `v` of M with eigenvalue `mu`.
BranchAttenuation branch_attenuation(const PhaseOracle& oracle, const Eigen::VectorXcd& v, cplx mu, int k);

struct MultiQpeOptions {
  /// One optional window per matrix.
  std::vector<std::optional<SpectralWindow>> windows;
  QpeEngine engine = QpeEngine::automatic;
  /// Branches with joint probability below this are dropped.
  double prune = 1e-6;
  /// Clusters lighter than this are never reported as roots.
  double min_root_mass = 1e-3;
  double sharp_threshold = 0.5;
  /// Commutation tolerance relative to (1 + ||A|| ||B||).
  double commute_tol = 1e-8;
  /// Most probable branches kept per register; the rest count as pruned.
  std::size_t max_level_nodes = 4096;
};

struct JointOutcome {
  std::vector<std::uint64_t> indices;
  std::vector<std::string> bits;
  std::vector<double> eigenvalues;
  double mass = 0.0;
  double sharpness = 0.0;
};

struct MultiQpeResult {
  int bits = 0;
  QpeEngine engine = QpeEngine::dense;
  std::vector<SpectralWindow> windows;
  std::vector<JointOutcome> roots;
  /// Non-negligible clusters that are not sharp.
  std::vector<JointOutcome> discarded;
  double pruned_mass = 0.0;
  /// Per register: the marginal outcome distribution is flat (complex, discard).
  std::vector<bool> register_flags;
  /// 1 - total root mass.
  double diffuse_mass = 0.0;
  std::size_t leaves = 0;
};

/// Successive QPE over commuting matrices sharing one signal register.
/// Throws std::invalid_argument for non-commuting inputs.
MultiQpeResult multi_qpe(const std::vector<Eigen::MatrixXcd>& ms, const Eigen::VectorXcd& psi0, int bits,
                         const MultiQpeOptions& opts = {});

}  // namespace hfroots
