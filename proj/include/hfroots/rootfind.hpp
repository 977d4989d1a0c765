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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfroots/quotient.hpp"

namespace hfroots {

using cplx = std::complex<double>;

struct EigenPair {
  cplx value;
  /// Unit 2-norm.
  Eigen::VectorXcd vector;
  /// ||A v - value v||_2.
  double residual = 0.0;
};

/// Dense nonsymmetric eigendecomposition (Hessenberg reduction + shifted QR).
/// Returns n pairs sorted by (real, imag). Throws NumericError when QR does not
/// converge or a residual exceeds tol * ||A||_F.
std::vector<EigenPair> eigen_decompose(const Eigen::MatrixXd& a, double tol = 1e-8);
std::vector<EigenPair> eigen_decompose(const Eigen::MatrixXcd& a, double tol = 1e-8);

/// Rayleigh quotient (v^H A v) / (v^H v). With A = M^T this is the Eq-5 style
/// component read-off for a left eigenvector of M.
template <typename Derived, typename VDerived>
cplx rayleigh_quotient(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<VDerived>& v) {
  const Eigen::VectorXcd vc = v.template cast<cplx>();
  const cplx denom = vc.squaredNorm();
  if (std::abs(denom) == 0.0) throw std::invalid_argument("rayleigh quotient of the zero vector");
  const Eigen::VectorXcd av = a.template cast<cplx>() * vc;
  return vc.dot(av) / denom;
}

/// Component of a root along variable with multiplication matrix `m` (column
/// convention), read from an eigenvector `v` of the transposed matrices.
cplx rayleigh_component(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v);

enum class RootKind { real, complex };

struct Root {
  /// One complex value per ring variable.
  Eigen::VectorXcd point;
  RootKind kind = RootKind::real;
  /// |f_k(point)| for each checked generator.
  std::vector<double> residuals;
  /// Shared eigenvector of the transposed multiplication matrices (unit norm).
  Eigen::VectorXcd eigenvector;
};

struct RootSet {
  std::vector<std::string> variables;
  std::vector<Root> roots;
  /// Number of roots removed by filter_real.
  std::size_t discarded = 0;
  std::size_t real_count() const;
};

struct SolveOptions {
  /// Ring index of the matrix decomposed first; defaults to the last variable.
  std::optional<std::size_t> primary_variable;
  /// Eigenvalues closer than cluster_tol * (1 + |lambda|) are treated as one.
  double cluster_tol = 1e-6;
  /// Residual tolerance for eigen_decompose.
  double eigen_tol = 1e-8;
  /// Relative generator-residual bound: |f(root)| <= eval_tol * (1 + ||coeffs(f)||).
  double eval_tol = 1e-6;
  /// Absolute imaginary tolerance; defaults to 1e-8 * (1 + max |eigenvalue|).
  std::optional<double> real_tol;
};

/// All roots of the ideal behind `set`, one tuple per quotient dimension.
/// Degenerate eigenspaces of the primary matrix are split by projecting the
/// remaining matrices onto them. Residuals are evaluated against the Groebner
/// basis elements. Throws NumericError if a degenerate block cannot be split or
/// a root violates the residual bound.
RootSet solve_system(const MultMatrixSet& set, const SolveOptions& opts = {});

/// Residuals of every root against `generators` (e.g. the original ideal).
std::vector<std::vector<double>> generator_residuals(const RootSet& roots, std::span<const Polynomial> generators);

/// Keeps roots whose components all have |Im| <= real_tol.
RootSet filter_real(const RootSet& roots, double real_tol);

}  // namespace hfroots
