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

#include "hfroots/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

#include "hfroots/errors.hpp"

namespace hfroots {

namespace {

constexpr int kMaxBits = 20;
constexpr int kMaxSignalQubits = 4;
constexpr double kRescaleHigh = 1e120;
constexpr double kRescaleLow = 1e-120;
constexpr double kPurifyTol = 1e-12;
const double kDenseGrowthLimit = std::log(1e6);

std::uint64_t wrap(std::int64_t k, std::uint64_t n) {
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(((k % m) + m) % m);
}

Eigen::VectorXcd pad_vector(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() > dim) throw std::invalid_argument("state longer than the signal register");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  out.head(v.size()) = v;
  return out;
}

double max_imag_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  double g = 0.0;
  for (const cplx& l : es.eigenvalues()) g = std::max(g, l.imag());
  return g;
}

PhasePeak make_peak(const std::vector<double>& dist, std::uint64_t k, int bits, const SpectralWindow& w) {
  const auto n = static_cast<std::uint64_t>(dist.size());
  PhasePeak p;
  p.index = k;
  p.bits = phase_bits(k, bits);
  p.phase = static_cast<double>(k) / static_cast<double>(n);
  p.eigenvalue = decode_eigenvalue(k, bits, w);
  std::set<std::uint64_t> inner;
  for (int d = -1; d <= 1; ++d) inner.insert(wrap(static_cast<std::int64_t>(k) + d, n));
  std::set<std::uint64_t> ring;
  for (int d = -4; d <= 4; ++d) {
    const std::uint64_t b = wrap(static_cast<std::int64_t>(k) + d, n);
    if (!inner.contains(b)) ring.insert(b);
  }
  for (auto b : inner) p.mass += dist[b];
  double ring_mass = 0.0;
  for (auto b : ring) ring_mass += dist[b];
  p.sharpness = p.mass > 0.0 ? p.mass / (p.mass + ring_mass) : 0.0;
  return p;
}

struct PeakSummary {
  PhasePeak modal;
  std::vector<PhasePeak> peaks;
  double sharp_mass = 0.0;
};

// Greedy +-1 bin clustering from the most probable bin down.
PeakSummary summarize_peaks(const std::vector<double>& dist, int bits, const SpectralWindow& w, const QpeOptions& opts) {
  const auto n = static_cast<std::uint64_t>(dist.size());
  PeakSummary out;
  std::vector<std::uint64_t> order(n);
  for (std::uint64_t k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) { return dist[a] > dist[b]; });
  out.modal = make_peak(dist, order.front(), bits, w);
  out.modal.sharp = out.modal.sharpness >= opts.sharp_threshold;

  std::vector<bool> taken(n, false);
  for (std::uint64_t k : order) {
    if (dist[k] * 3.0 < opts.min_peak_mass) break;
    if (taken[k]) continue;
    PhasePeak p = make_peak(dist, k, bits, w);
    p.mass = 0.0;
    for (int d = -1; d <= 1; ++d) {
      const std::uint64_t b = wrap(static_cast<std::int64_t>(k) + d, n);
      if (!taken[b]) {
        p.mass += dist[b];
        taken[b] = true;
      }
    }
    if (p.mass < opts.min_peak_mass) continue;
    p.sharp = p.sharpness >= opts.sharp_threshold;
    if (p.sharp) out.sharp_mass += p.mass;
    out.peaks.push_back(std::move(p));
  }
  out.sharp_mass = std::min(out.sharp_mass, 1.0);
  return out;
}

// One child of a register measurement: outcome k, the post-measurement state
// (unit norm in the engine's representation) and its log10 weight increment.
struct Branch {
  std::uint64_t k = 0;
  Eigen::VectorXcd state;
  double log10_weight = 0.0;
};

class RegisterStep {
 public:
  virtual ~RegisterStep() = default;
  virtual std::vector<Branch> expand(const Eigen::VectorXcd& state) const = 0;
};

class DenseStep : public RegisterStep {
 public:
  explicit DenseStep(const PhaseOracle& o) : oracle_(o) {}
  std::vector<Branch> expand(const Eigen::VectorXcd& state) const override {
    const RegisterOutcomes ro = register_outcomes(oracle_, state);
    std::vector<Branch> out;
    for (std::size_t k = 0; k < ro.amplitudes.size(); ++k) {
      const double p = ro.amplitudes[k].squaredNorm();
      if (!(p > 0.0)) continue;
      out.push_back(Branch{k, ro.amplitudes[k] / std::sqrt(p), ro.log10_scale + std::log10(p)});
    }
    return out;
  }

 private:
  const PhaseOracle& oracle_;
};

// log((1 + e^lw) / 2) without overflow.
cplx log_half_one_plus_exp(cplx lw) {
  if (lw.real() > 0.0) return lw + std::log(1.0 + std::exp(-lw)) - std::numbers::ln2;
  return std::log(1.0 + std::exp(lw)) - std::numbers::ln2;
}

// log(1 - e^lw) without overflow.
cplx log_one_minus_exp(cplx lw) {
  if (lw.real() > 0.0) return lw + std::log(std::exp(-lw) - 1.0);
  return std::log(1.0 - std::exp(lw));
}

// The register operators in the eigenbasis V of the scaled matrix: state is a
// coefficient vector c with ||V c|| = 1, and outcome k multiplies c_j by
//   g_k = 2^-t sum_m z^m = 2^-t (1 - mu^N) / (1 - z),  z = mu_j e^{-2 pi i k / N},
// falling back to prod_b (1 + z^(2^b)) / 2 when z is close to 1.
class SpectralStep : public RegisterStep {
 public:
  SpectralStep(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& scaled_eigenvalues, int bits)
      : basis_(basis), log_mu_(cplx(0.0, -1.0) * scaled_eigenvalues), bits_(bits) {
    const double n = std::ldexp(1.0, bits);
    log_num_.resize(log_mu_.size());
    for (Eigen::Index j = 0; j < log_mu_.size(); ++j) {
      log_num_(j) = log_one_minus_exp(n * log_mu_(j)) - static_cast<double>(bits) * std::numbers::ln2;
    }
  }

  std::vector<Branch> expand(const Eigen::VectorXcd& c) const override {
    const auto n = std::uint64_t{1} << static_cast<unsigned>(bits_);
    const Eigen::Index dim = c.size();
    std::vector<Branch> out;
    Eigen::VectorXcd log_c(dim);
    for (Eigen::Index j = 0; j < dim; ++j) log_c(j) = std::log(c(j));
    Eigen::VectorXcd lc(dim);
    Eigen::VectorXcd next(dim);
    for (std::uint64_t k = 0; k < n; ++k) {
      const double turn = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      double top = -std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (c(j) == 0.0) {
          lc(j) = cplx(-std::numeric_limits<double>::infinity(), 0.0);
          continue;
        }
        const cplx log_z = log_mu_(j) + cplx(0.0, turn);
        const cplx one_minus_z = 1.0 - std::exp(log_z);
        cplx acc = log_c(j);
        if (std::abs(one_minus_z) > 1e-6) {
          acc += log_num_(j) - std::log(one_minus_z);
        } else {
          for (int b = 0; b < bits_; ++b) acc += log_half_one_plus_exp(std::ldexp(1.0, b) * log_z);
        }
        lc(j) = acc;
        if (std::isfinite(acc.real())) top = std::max(top, acc.real());
      }
      if (!std::isfinite(top)) continue;
      for (Eigen::Index j = 0; j < dim; ++j) {
        next(j) = std::isfinite(lc(j).real()) ? std::exp(lc(j) - top) : cplx(0.0);
      }
      const double p = (basis_ * next).squaredNorm();
      if (!(p > 0.0)) continue;
      out.push_back(Branch{k, next / std::sqrt(p), 2.0 * top / std::numbers::ln10 + std::log10(p)});
    }
    return out;
  }

 private:
  const Eigen::MatrixXcd& basis_;
  Eigen::VectorXcd log_mu_;
  Eigen::VectorXcd log_num_;
  int bits_;
};

struct Leaf {
  std::vector<std::uint64_t> indices;
  Eigen::VectorXcd state;
  double probability = 0.0;
};

// Expands every register in turn, keeping at most `budget` nodes per level.
// Nodes whose probability, normalized over the whole level, falls below
// `prune` are dropped; all dropped mass is reported in `pruned`. Marginal
// outcome distributions per register are collected before any cut.
std::vector<Leaf> run_registers(const std::vector<std::unique_ptr<RegisterStep>>& steps, const Eigen::VectorXcd& root,
                                std::uint64_t outcomes, double prune, std::size_t budget, double& pruned,
                                std::vector<std::vector<double>>* marginals = nullptr) {
  struct Node {
    std::vector<std::uint64_t> indices;
    Eigen::VectorXcd state;
    double log10_weight = 0.0;
  };
  const auto lighter = [](const Node& a, const Node& b) { return a.log10_weight > b.log10_weight; };
  std::vector<Node> level{Node{{}, root, 0.0}};
  double kept = 1.0;
  for (const auto& step : steps) {
    std::vector<Node> heap;  // min-heap on weight
    std::vector<double> marg(outcomes, 0.0);
    double top = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const Node& node : level) {
      for (Branch& b : step->expand(node.state)) {
        const double w = node.log10_weight + b.log10_weight;
        if (w > top) {
          const double f = std::isfinite(top) ? std::pow(10.0, top - w) : 0.0;
          sum *= f;
          for (double& m : marg) m *= f;
          top = w;
        }
        const double rel = std::pow(10.0, w - top);
        sum += rel;
        marg[b.k] += rel;
        if (heap.size() >= budget) {
          if (w <= heap.front().log10_weight) continue;
          std::pop_heap(heap.begin(), heap.end(), lighter);
          heap.pop_back();
        }
        Node c;
        c.indices = node.indices;
        c.indices.push_back(b.k);
        c.state = std::move(b.state);
        c.log10_weight = w;
        heap.push_back(std::move(c));
        std::push_heap(heap.begin(), heap.end(), lighter);
      }
    }
    if (marginals != nullptr) {
      for (double& m : marg) m = sum > 0.0 ? kept * m / sum : 0.0;
      marginals->push_back(std::move(marg));
    }
    level.clear();
    double retained = 0.0;
    for (Node& c : heap) {
      const double p = std::pow(10.0, c.log10_weight - top) / sum;
      if (p < prune || !(p > 0.0)) continue;
      retained += p;
      c.log10_weight = std::log10(p);
      level.push_back(std::move(c));
    }
    if (level.empty()) {
      pruned = 1.0;
      return {};
    }
    kept *= retained;
    // Restore a deterministic order independent of heap layout.
    std::sort(level.begin(), level.end(), [](const Node& a, const Node& b) { return a.indices < b.indices; });
  }
  pruned = 1.0 - kept;
  double sum = 0.0;
  for (const Node& c : level) sum += std::pow(10.0, c.log10_weight);
  std::vector<Leaf> leaves;
  leaves.reserve(level.size());
  for (Node& c : level) {
    leaves.push_back(Leaf{std::move(c.indices), std::move(c.state), kept * std::pow(10.0, c.log10_weight) / sum});
  }
  return leaves;
}

// Simultaneous eigenbasis of commuting matrices from a generic combination.
struct JointBasis {
  Eigen::MatrixXcd vectors;
  std::vector<Eigen::VectorXcd> eigenvalues;  // per matrix
  Eigen::VectorXcd coefficients(const Eigen::VectorXcd& psi) const {
    Eigen::VectorXcd c = vectors.partialPivLu().solve(psi);
    const double cut = kPurifyTol * c.norm();
    for (auto& x : c) {
      if (std::abs(x) <= cut) x = 0.0;
    }
    const double nrm = (vectors * c).norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("initial state is zero");
    return c / nrm;
  }
};

JointBasis joint_basis(const std::vector<Eigen::MatrixXcd>& ms) {
  const Eigen::Index n = ms.front().rows();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const double weight = 1.0 + std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
    g += weight * ms[i] / (1.0 + ms[i].norm());
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  JointBasis jb;
  jb.vectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) jb.vectors.col(j).normalize();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(jb.vectors).singularValues();
  if (!(sv(n - 1) > 1e-10 * sv(0))) throw NumericError("matrices are not diagonalizable in a common basis");
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(jb.vectors);
  for (const auto& m : ms) {
    const Eigen::MatrixXcd d = lu.solve(m * jb.vectors);
    const Eigen::MatrixXcd off = d - Eigen::MatrixXcd(d.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > 1e-6 * (1.0 + m.norm())) {
      throw NumericError("matrices are not diagonalizable in a common basis");
    }
    jb.eigenvalues.push_back(d.diagonal());
  }
  return jb;
}

QpeEngine pick_engine(QpeEngine requested, int bits, double growth) {
  if (requested != QpeEngine::automatic) return requested;
  return std::ldexp(growth, bits) > kDenseGrowthLimit ? QpeEngine::spectral : QpeEngine::dense;
}

using Key = std::vector<std::uint64_t>;

// All keys whose cyclic Chebyshev distance from `c` lies in [lo, hi].
std::set<Key> neighbours(const Key& c, int lo, int hi, std::uint64_t n) {
  std::set<Key> out;
  std::set<Key> inner;
  const std::size_t r = c.size();
  std::vector<int> off(r, -hi);
  while (true) {
    Key k(r);
    int cheb = 0;
    for (std::size_t i = 0; i < r; ++i) {
      k[i] = wrap(static_cast<std::int64_t>(c[i]) + off[i], n);
      cheb = std::max(cheb, std::abs(off[i]));
    }
    if (cheb < lo) {
      inner.insert(k);
    } else {
      out.insert(k);
    }
    std::size_t i = 0;
    while (i < r && off[i] == hi) off[i++] = -hi;
    if (i == r) break;
    ++off[i];
  }
  for (const auto& k : inner) out.erase(k);
  return out;
}

}  // namespace

std::string engine_name(QpeEngine e) {
  switch (e) {
    case QpeEngine::automatic:
      return "automatic";
    case QpeEngine::dense:
      return "dense";
    case QpeEngine::spectral:
      return "spectral";
  }
  return "unknown";
}

double RegisterOutcomes::total() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += a.squaredNorm();
  return s;
}

SpectralWindow default_window(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw std::invalid_argument("window needs a square matrix");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  const double scale = 1.0 + ev.cwiseAbs().maxCoeff();
  std::vector<double> re;
  for (const cplx& l : ev) {
    if (std::abs(l.imag()) <= 1e-8 * scale) re.push_back(l.real());
  }
  if (re.empty()) {
    for (const cplx& l : ev) re.push_back(l.real());
  }
  const auto [lo, hi] = std::minmax_element(re.begin(), re.end());
  SpectralWindow w;
  w.center = 0.5 * (*lo + *hi);
  w.radius = std::max(0.5 * (*hi - *lo), 1e-6) / (0.9 * std::numbers::pi);
  return w;
}

PhaseOracle make_phase_oracle(const Eigen::MatrixXcd& m, int bits, std::optional<SpectralWindow> window) {
  if (bits < 1) throw std::invalid_argument("QPE needs at least one phase bit");
  if (bits > kMaxBits) throw ResourceLimitExceeded("phase register exceeds simulator capacity");
  if (m.rows() == 0 || m.rows() != m.cols()) throw std::invalid_argument("QPE needs a square matrix");
  PhaseOracle o;
  o.bits = bits;
  o.dimension = m.rows();
  o.signal_qubits = qubits_for(m.rows());
  if (o.signal_qubits > kMaxSignalQubits) throw ResourceLimitExceeded("signal register exceeds simulator capacity");
  o.window = window.value_or(SpectralWindow{});
  if (!(o.window.radius > 0.0)) throw std::invalid_argument("window radius must be positive");

  o.scaled = (m - o.window.center * Eigen::MatrixXcd::Identity(m.rows(), m.cols())) / o.window.radius;
  o.growth_rate = max_imag_eigenvalue(o.scaled);
  const Eigen::Index dim = Eigen::Index{1} << o.signal_qubits;
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  // v = W e^{-g}; squaring gives W^(2^k) e^{-2^k g}.
  Eigen::MatrixXcd v = pad_to_power_of_two(matrix_exp(o.scaled) * std::exp(-o.growth_rate), 1.0);
  for (int k = 0; k < bits; ++k) {
    if (k > 0) v = (v * v).eval();
    if (!v.allFinite()) throw NumericError("matrix power overflowed");
    const double alpha = default_alpha(v);
    const BlockEncoding pw = block_encode(v, alpha);
    const BlockEncoding bal = block_encode(identity, alpha);
    o.max_unitarity_error = std::max({o.max_unitarity_error, pw.unitarity_error(), bal.unitarity_error()});
    o.alphas.push_back(alpha);
    o.power_blocks.push_back(pw.block());
    o.balance_blocks.push_back(bal.block() * std::exp(-std::ldexp(o.growth_rate, k)));
  }
  return o;
}

RegisterOutcomes register_outcomes(const PhaseOracle& oracle, const Eigen::VectorXcd& psi) {
  const Eigen::Index dim = Eigen::Index{1} << oracle.signal_qubits;
  const Eigen::Index n = Eigen::Index{1} << oracle.bits;
  RegisterOutcomes out;
  // Column m holds the signal state for register value m.
  Eigen::MatrixXcd u(dim, n);
  u.col(0) = pad_vector(psi, dim);
  const double block_norm = std::ldexp(1.0, oracle.signal_qubits);
  for (int j = 0; j < oracle.bits; ++j) {
    const Eigen::Index width = Eigen::Index{1} << j;
    const auto jj = static_cast<std::size_t>(j);
    const double s = oracle.alphas[jj] / block_norm;
    const Eigen::MatrixXcd prev = u.leftCols(width);
    u.leftCols(width).noalias() = oracle.balance_blocks[jj] * prev / s;
    u.middleCols(width, width).noalias() = oracle.power_blocks[jj] * prev / s;
    out.log10_scale += 2.0 * std::log10(s);
    const double peak = u.leftCols(2 * width).cwiseAbs().maxCoeff();
    if (!std::isfinite(peak)) throw NumericError("QPE amplitudes overflowed");
    if (peak > kRescaleHigh || (peak < kRescaleLow && peak > 0.0)) {
      u.leftCols(2 * width) /= peak;
      out.log10_scale += 2.0 * std::log10(peak);
    }
  }

  // Inverse QFT after the Hadamards: a_k = 2^-t sum_m e^{-2 pi i k m / 2^t} u_m.
  Eigen::FFT<double> fft;
  std::vector<cplx> row(static_cast<std::size_t>(n));
  std::vector<cplx> spec;
  out.amplitudes.assign(static_cast<std::size_t>(n), Eigen::VectorXcd::Zero(dim));
  const double inv = 1.0 / static_cast<double>(n);
  for (Eigen::Index d = 0; d < dim; ++d) {
    for (Eigen::Index m = 0; m < n; ++m) row[static_cast<std::size_t>(m)] = u(d, m);
    fft.fwd(spec, row);
    for (Eigen::Index k = 0; k < n; ++k) {
      out.amplitudes[static_cast<std::size_t>(k)](d) = spec[static_cast<std::size_t>(k)] * inv;
    }
  }
  return out;
}

std::string phase_bits(std::uint64_t index, int bits) {
  std::string s(static_cast<std::size_t>(bits), '0');
  for (int b = 0; b < bits; ++b) {
    if ((index >> (bits - 1 - b)) & 1U) s[static_cast<std::size_t>(b)] = '1';
  }
  return s;
}

double decode_eigenvalue(std::uint64_t index, int bits, const SpectralWindow& w) {
  double s = -2.0 * std::numbers::pi * static_cast<double>(index) / std::ldexp(1.0, bits);
  if (s <= -std::numbers::pi) s += 2.0 * std::numbers::pi;
  return w.from_scaled(s);
}

QpeResult qpe_simulate(const PhaseOracle& oracle, const Eigen::VectorXcd& psi0, const QpeOptions& opts) {
  if (psi0.size() != oracle.dimension) throw std::invalid_argument("initial state has the wrong length");
  if (psi0.norm() == 0.0) throw std::invalid_argument("initial state is zero");
  QpeResult r;
  r.bits = oracle.bits;
  r.window = oracle.window;
  r.engine = pick_engine(opts.engine, oracle.bits, oracle.growth_rate);
  const auto n = std::uint64_t{1} << static_cast<unsigned>(r.bits);
  r.distribution.assign(n, 0.0);

  std::vector<std::unique_ptr<RegisterStep>> steps;
  Eigen::VectorXcd root;
  std::optional<JointBasis> basis;
  if (r.engine == QpeEngine::dense) {
    root = psi0.normalized();
    const RegisterOutcomes ro = register_outcomes(oracle, root);
    r.log10_success = ro.log10_scale + std::log10(ro.total());
    steps.push_back(std::make_unique<DenseStep>(oracle));
  } else {
    basis = joint_basis({oracle.scaled});
    root = basis->coefficients(psi0);
    steps.push_back(std::make_unique<SpectralStep>(basis->vectors, basis->eigenvalues.front(), r.bits));
  }
  double pruned = 0.0;
  for (const Leaf& l : run_registers(steps, root, n, 0.0, n, pruned)) r.distribution[l.indices.front()] = l.probability;

  const PeakSummary ps = summarize_peaks(r.distribution, r.bits, r.window, opts);
  r.modal = ps.modal;
  r.peaks = ps.peaks;
  r.sharp_mass = ps.sharp_mass;
  r.flatness = 1.0 - r.sharp_mass;
  r.complex_flag = r.bits >= 6 && r.sharp_mass < opts.flat_threshold;
  return r;
}

QpeResult qpe_simulate(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& psi0, int bits, const QpeOptions& opts) {
  return qpe_simulate(make_phase_oracle(m, bits, opts.window), psi0, opts);
}

BranchAttenuation branch_attenuation(const PhaseOracle& oracle, const Eigen::VectorXcd& v, cplx mu, int k) {
  if (k < 0 || k >= oracle.bits) throw std::invalid_argument("power index out of range");
  const Eigen::Index dim = Eigen::Index{1} << oracle.signal_qubits;
  const Eigen::VectorXcd x = pad_vector(v, dim);
  BranchAttenuation b;
  b.predicted = std::exp(std::ldexp(1.0, k) * mu.imag() / oracle.window.radius);
  const auto kk = static_cast<std::size_t>(k);
  b.simulated = (oracle.power_blocks[kk] * x).norm() / (oracle.balance_blocks[kk] * x).norm();
  return b;
}

MultiQpeResult multi_qpe(const std::vector<Eigen::MatrixXcd>& ms, const Eigen::VectorXcd& psi0, int bits,
                         const MultiQpeOptions& opts) {
  if (ms.empty()) throw std::invalid_argument("multi_qpe needs at least one matrix");
  for (const auto& m : ms) {
    if (m.rows() != ms.front().rows() || m.cols() != ms.front().cols()) {
      throw std::invalid_argument("matrices differ in size");
    }
  }
  if (psi0.size() != ms.front().rows()) throw std::invalid_argument("initial state has the wrong length");
  if (psi0.norm() == 0.0) throw std::invalid_argument("initial state is zero");
  for (std::size_t a = 0; a < ms.size(); ++a) {
    for (std::size_t b = a + 1; b < ms.size(); ++b) {
      const double dev = (ms[a] * ms[b] - ms[b] * ms[a]).cwiseAbs().maxCoeff();
      const double bound = opts.commute_tol * (1.0 + ms[a].norm() * ms[b].norm());
      if (dev > bound) throw std::invalid_argument("matrices do not commute");
    }
  }

  MultiQpeResult res;
  res.bits = bits;
  std::vector<PhaseOracle> oracles;
  double growth = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const bool given = i < opts.windows.size() && opts.windows[i].has_value();
    const SpectralWindow win = given ? *opts.windows[i] : default_window(ms[i]);
    res.windows.push_back(win);
    oracles.push_back(make_phase_oracle(ms[i], bits, win));
    growth = std::max(growth, oracles.back().growth_rate);
  }
  res.engine = pick_engine(opts.engine, bits, growth);
  const auto n = std::uint64_t{1} << static_cast<unsigned>(bits);

  std::vector<std::unique_ptr<RegisterStep>> steps;
  Eigen::VectorXcd root;
  std::optional<JointBasis> basis;
  if (res.engine == QpeEngine::dense) {
    root = psi0.normalized();
    for (const auto& o : oracles) steps.push_back(std::make_unique<DenseStep>(o));
  } else {
    std::vector<Eigen::MatrixXcd> scaled;
    for (const auto& o : oracles) scaled.push_back(o.scaled);
    basis = joint_basis(scaled);
    root = basis->coefficients(psi0);
    for (std::size_t i = 0; i < oracles.size(); ++i) {
      steps.push_back(std::make_unique<SpectralStep>(basis->vectors, basis->eigenvalues[i], bits));
    }
  }
  std::vector<std::vector<double>> marginals;
  const std::vector<Leaf> leaves =
      run_registers(steps, root, n, opts.prune, opts.max_level_nodes, res.pruned_mass, &marginals);
  res.leaves = leaves.size();
  QpeOptions peak_opts;
  peak_opts.sharp_threshold = opts.sharp_threshold;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::vector<double> dist = i < marginals.size() ? marginals[i] : std::vector<double>{};
    dist.resize(n, 0.0);
    const PeakSummary ps = summarize_peaks(dist, bits, res.windows[i], peak_opts);
    res.register_flags.push_back(bits >= 6 && ps.sharp_mass < peak_opts.flat_threshold);
  }

  std::map<Key, double> prob;
  for (const Leaf& l : leaves) prob[l.indices] = l.probability;
  std::vector<std::pair<Key, double>> order(prob.begin(), prob.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  const double floor = opts.min_root_mass / std::pow(3.0, static_cast<double>(ms.size()));
  std::set<Key> taken;
  double root_mass = 0.0;
  for (const auto& [key, p] : order) {
    if (p < floor) break;
    if (taken.contains(key)) continue;
    JointOutcome j;
    j.indices = key;
    for (const auto& k : neighbours(key, 0, 1, n)) {
      if (taken.contains(k)) continue;
      if (auto it = prob.find(k); it != prob.end()) j.mass += it->second;
      taken.insert(k);
    }
    if (j.mass < opts.min_root_mass) continue;
    double ring = 0.0;
    for (const auto& k : neighbours(key, 2, 4, n)) {
      if (auto it = prob.find(k); it != prob.end()) ring += it->second;
    }
    j.sharpness = j.mass / (j.mass + ring);
    for (std::size_t i = 0; i < key.size(); ++i) {
      j.bits.push_back(phase_bits(key[i], bits));
      j.eigenvalues.push_back(decode_eigenvalue(key[i], bits, res.windows[i]));
    }
    if (j.sharpness >= opts.sharp_threshold) {
      root_mass += j.mass;
      res.roots.push_back(std::move(j));
    } else {
      res.discarded.push_back(std::move(j));
    }
  }
  res.diffuse_mass = std::max(0.0, 1.0 - root_mass);
  return res;
}

}  // namespace hfroots
