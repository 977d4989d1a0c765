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

#include "hfroots/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hfroots/errors.hpp"

namespace hfroots {

namespace {

template <typename Solver, typename Matrix>
std::vector<EigenPair> collect_pairs(const Solver& solver, const Matrix& a, double tol) {
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalue iteration did not converge");
  }
  const Eigen::MatrixXcd ac = a.template cast<cplx>();
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  const double scale = std::max(ac.norm(), 1.0);
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    EigenPair p;
    p.value = values(k);
    p.vector = vectors.col(k).normalized();
    p.residual = (ac * p.vector - p.value * p.vector).norm();
    if (p.residual > tol * scale) {
      std::ostringstream os;
      os << "eigenpair residual " << p.residual << " exceeds bound " << tol * scale;
      throw NumericError(os.str());
    }
    pairs.push_back(std::move(p));
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& x, const EigenPair& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return pairs;
}

// Groups indices of nearly equal values; groups keep the input order.
std::vector<std::vector<std::size_t>> cluster_values(const std::vector<cplx>& values, double tol) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(values[i]), std::abs(values[j]));
      if (std::abs(values[i] - values[j]) <= tol * scale) parent[find(j)] = find(i);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

// Orthonormal basis of the numerical null space of `b`, between 1 and max_dim columns.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& b, Eigen::Index max_dim, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const Eigen::Index n = b.cols();
  const double threshold = rel_tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index count = 0;
  for (Eigen::Index k = n - 1; k >= 0 && s(k) <= threshold; --k) ++count;
  count = std::clamp<Eigen::Index>(count, 1, max_dim);
  return svd.matrixV().rightCols(count);
}

cplx mean_of(const std::vector<cplx>& values, const std::vector<std::size_t>& idx) {
  cplx sum = 0.0;
  for (std::size_t i : idx) sum += values[i];
  return sum / static_cast<double>(idx.size());
}

// Fixes the global phase so the largest-magnitude entry is real and positive.
Eigen::VectorXcd canonical_phase(Eigen::VectorXcd v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v(k)) > 0.0) v *= std::conj(v(k)) / std::abs(v(k));
  return v;
}

struct Splitter {
  const std::vector<Eigen::MatrixXd>& transposed;
  const SolveOptions& opts;

  // Splits the invariant subspace spanned by the orthonormal columns of `basis`
  // using the variables in `queue`, returning one vector per simultaneous eigenvector.
  std::vector<Eigen::VectorXcd> split(const Eigen::MatrixXcd& basis, std::vector<std::size_t> queue) const {
    if (basis.cols() == 1) return {basis.col(0)};
    if (queue.empty()) {
      for (std::size_t v = 0; v < transposed.size(); ++v) {
        const Eigen::MatrixXcd c = basis.adjoint() * transposed[v].cast<cplx>() * basis;
        const cplx mu = c.trace() / static_cast<double>(c.rows());
        const Eigen::MatrixXcd dev = c - mu * Eigen::MatrixXcd::Identity(c.rows(), c.cols());
        if (dev.norm() > opts.cluster_tol * (1.0 + c.norm())) {
          std::ostringstream os;
          os << "could not split a degenerate block of dimension " << basis.cols()
             << " (variable index " << v << " acts non-scalarly)";
          throw NumericError(os.str());
        }
      }
      // Coincident roots: every matrix acts as a scalar on this block.
      std::vector<Eigen::VectorXcd> out;
      for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k));
      return out;
    }
    const std::size_t var = queue.front();
    queue.erase(queue.begin());
    // Restriction of the next matrix to the invariant subspace; the basis is
    // orthonormal so the Gram matrix of the projected problem is the identity.
    const Eigen::MatrixXcd restricted = basis.adjoint() * transposed[var].cast<cplx>() * basis;
    const auto pairs = eigen_decompose(restricted, opts.eigen_tol);
    std::vector<cplx> values;
    for (const auto& p : pairs) values.push_back(p.value);
    std::vector<Eigen::VectorXcd> out;
    for (const auto& group : cluster_values(values, opts.cluster_tol)) {
      const cplx mu = mean_of(values, group);
      const Eigen::MatrixXcd shifted =
          restricted - mu * Eigen::MatrixXcd::Identity(restricted.rows(), restricted.cols());
      const Eigen::MatrixXcd w = null_space(shifted, static_cast<Eigen::Index>(group.size()), opts.cluster_tol);
      Eigen::MatrixXcd sub = basis * w;
      // Re-orthonormalize to keep round-off from accumulating through levels.
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sub);
      sub = qr.householderQ() * Eigen::MatrixXcd::Identity(sub.rows(), sub.cols());
      auto leaves = split(sub, queue);
      out.insert(out.end(), leaves.begin(), leaves.end());
    }
    return out;
  }
};

}  // namespace

std::vector<EigenPair> eigen_decompose(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigen_decompose needs a square matrix");
  if (a.rows() > 512) throw ResourceLimitExceeded("eigen_decompose is limited to dimension 512");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, true);
  return collect_pairs(solver, a, tol);
}

std::vector<EigenPair> eigen_decompose(const Eigen::MatrixXcd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigen_decompose needs a square matrix");
  if (a.rows() > 512) throw ResourceLimitExceeded("eigen_decompose is limited to dimension 512");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, true);
  return collect_pairs(solver, a, tol);
}

cplx rayleigh_component(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  return rayleigh_quotient(m.transpose(), v);
}

std::size_t RootSet::real_count() const {
  return static_cast<std::size_t>(
      std::count_if(roots.begin(), roots.end(), [](const Root& r) { return r.kind == RootKind::real; }));
}

RootSet solve_system(const MultMatrixSet& set, const SolveOptions& opts) {
  const CommutationReport comm = check_commuting(set);
  if (!comm.commuting) throw NumericError("multiplication matrices do not commute");

  const Ring& ring = set.ring();
  const std::size_t nvars = ring.size();
  const std::size_t primary = opts.primary_variable.value_or(nvars - 1);
  if (primary >= nvars) throw RingError("primary variable index out of range");

  const auto transposed = set.transposed_double();
  const auto pairs = eigen_decompose(transposed[primary], opts.eigen_tol);
  std::vector<cplx> values;
  double max_abs = 0.0;
  for (const auto& p : pairs) {
    values.push_back(p.value);
    max_abs = std::max(max_abs, std::abs(p.value));
  }

  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (v != primary) queue.push_back(v);
  }

  const Splitter splitter{transposed, opts};
  const auto n = static_cast<Eigen::Index>(set.dimension());
  std::vector<Eigen::VectorXcd> vectors;
  for (const auto& group : cluster_values(values, opts.cluster_tol)) {
    const cplx mu = mean_of(values, group);
    const Eigen::MatrixXcd shifted = transposed[primary].cast<cplx>() - mu * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd space = null_space(shifted, static_cast<Eigen::Index>(group.size()), opts.cluster_tol);
    auto leaves = splitter.split(space, queue);
    // Defective eigenvalues (non-radical ideals) give fewer eigenvectors than
    // the algebraic multiplicity; repeat leaves so every root is counted.
    const std::size_t found = leaves.size();
    for (std::size_t k = found; k < group.size(); ++k) leaves.push_back(leaves[k % found]);
    vectors.insert(vectors.end(), leaves.begin(), leaves.end());
  }

  RootSet out;
  out.variables = ring.names();
  const auto& gens = set.basis().source().elements();
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& m : set.matrices()) mats.push_back(to_double(m));

  for (const auto& raw : vectors) {
    Root root;
    root.eigenvector = canonical_phase(raw.normalized());
    root.point.resize(static_cast<Eigen::Index>(nvars));
    for (std::size_t v = 0; v < nvars; ++v) {
      root.point(static_cast<Eigen::Index>(v)) = rayleigh_component(mats[v], root.eigenvector);
      max_abs = std::max(max_abs, std::abs(root.point(static_cast<Eigen::Index>(v))));
    }
    out.roots.push_back(std::move(root));
  }

  const double real_tol = opts.real_tol.value_or(1e-8 * (1.0 + max_abs));
  const auto residuals = generator_residuals(out, gens);
  for (std::size_t r = 0; r < out.roots.size(); ++r) {
    Root& root = out.roots[r];
    root.kind = root.point.imag().cwiseAbs().maxCoeff() <= real_tol ? RootKind::real : RootKind::complex;
    if (root.kind == RootKind::real) root.point = root.point.real().cast<cplx>();
    root.residuals = residuals[r];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const double bound = opts.eval_tol * (1.0 + gens[g].coefficient_norm());
      if (root.residuals[g] > bound) {
        std::ostringstream os;
        os << "root " << r << " violates generator " << g << " residual bound (" << root.residuals[g] << " > "
           << bound << ")";
        throw NumericError(os.str());
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> generator_residuals(const RootSet& roots, std::span<const Polynomial> generators) {
  std::vector<std::vector<double>> out;
  out.reserve(roots.roots.size());
  for (const auto& root : roots.roots) {
    std::vector<double> res;
    res.reserve(generators.size());
    const std::vector<cplx> point(root.point.data(), root.point.data() + root.point.size());
    for (const auto& g : generators) {
      res.push_back(std::abs(g.evaluate<cplx>(std::span<const cplx>(point))));
    }
    out.push_back(std::move(res));
  }
  return out;
}

RootSet filter_real(const RootSet& roots, double real_tol) {
  RootSet out;
  out.variables = roots.variables;
  out.discarded = roots.discarded;
  for (const auto& r : roots.roots) {
    if (r.point.imag().cwiseAbs().maxCoeff() <= real_tol) {
      Root kept = r;
      kept.kind = RootKind::real;
      out.roots.push_back(std::move(kept));
    } else {
      ++out.discarded;
    }
  }
  return out;
}

}  // namespace hfroots
