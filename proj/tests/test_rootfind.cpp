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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hfroots/errors.hpp"
#include "hfroots/rootfind.hpp"
#include "test_support.hpp"

namespace hfroots {
namespace {

const double s2 = 1.0 / std::sqrt(2.0);

// Index of the root whose real point is closest to `target` in max norm.
std::pair<const Root*, double> nearest(const RootSet& set, const std::vector<double>& target) {
  const Root* best = nullptr;
  double dist = 1e300;
  for (const Root& r : set.roots) {
    double d = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
      d = std::max(d, std::abs(r.point(static_cast<Eigen::Index>(i)) - cplx(target[i])));
    }
    if (d < dist) {
      dist = d;
      best = &r;
    }
  }
  return {best, dist};
}

TEST(EigenDecompose, RecoversPlantedSpectrum) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 2; n <= 8; ++n) {
    Eigen::MatrixXd q(n, n);
    for (int i = 0; i < n * n; ++i) q.data()[i] = u(rng);
    q += 2.0 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = i - 0.5 * n + 0.25;
    const Eigen::MatrixXd a = q * d.asDiagonal() * q.inverse();
    const auto pairs = eigen_decompose(a);
    ASSERT_EQ(static_cast<int>(pairs.size()), n);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(pairs[static_cast<std::size_t>(i)].value.real(), d(i), 1e-9);
      EXPECT_NEAR(pairs[static_cast<std::size_t>(i)].value.imag(), 0.0, 1e-9);
      EXPECT_NEAR(pairs[static_cast<std::size_t>(i)].vector.norm(), 1.0, 1e-12);
      EXPECT_LT(pairs[static_cast<std::size_t>(i)].residual, 1e-9);
    }
  }
}

TEST(EigenDecompose, RotationHasConjugatePair) {
  Eigen::MatrixXd r(2, 2);
  r << 0.6, -0.8, 0.8, 0.6;
  const auto pairs = eigen_decompose(r);
  EXPECT_NEAR(std::abs(pairs[0].value - cplx(0.6, -0.8)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(pairs[1].value - cplx(0.6, 0.8)), 0.0, 1e-12);
}

TEST(RootFind, ToyRootsMatchClosedForm) {
  const RootSet roots = solve_system(testing::toy_matrices());
  ASSERT_EQ(roots.roots.size(), 4u);
  EXPECT_EQ(roots.real_count(), 4u);
  EXPECT_EQ(roots.variables, (std::vector<std::string>{"x", "y", "e"}));
  for (const auto& t : std::vector<std::vector<double>>{{s2, s2, -1}, {-s2, -s2, -1}, {s2, -s2, 1}, {-s2, s2, 1}}) {
    EXPECT_LT(nearest(roots, t).second, 1e-10);
  }
}

TEST(RootFind, ToyEigenvectorsAreMonomialEvaluations) {
  // Each shared eigenvector is b = (ye, y, e, 1) evaluated at its root, and the
  // normalized Rayleigh quotient of M_p^T reproduces the p component.
  const MultMatrixSet set = testing::toy_matrices();
  const RootSet roots = solve_system(set);
  const auto mt = set.transposed_double();
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> rows{
      {{-s2, s2, -1, 1}, {s2, s2, -1}},
      {{s2, -s2, -1, 1}, {-s2, -s2, -1}},
      {{s2, s2, 1, 1}, {-s2, s2, 1}},
      {{-s2, -s2, 1, 1}, {s2, -s2, 1}},
  };
  for (const auto& [v, point] : rows) {
    const auto [root, dist] = nearest(roots, point);
    ASSERT_LT(dist, 1e-10);
    Eigen::VectorXcd vhat(4);
    for (int i = 0; i < 4; ++i) vhat(i) = v[static_cast<std::size_t>(i)];
    vhat.normalize();
    EXPECT_NEAR(std::abs(vhat.dot(root->eigenvector)), 1.0, 1e-10);
    for (std::size_t p = 0; p < 3; ++p) {
      EXPECT_NEAR(std::abs(rayleigh_quotient(mt[p], vhat) - cplx(point[p])), 0.0, 1e-10);
    }
  }
}

TEST(RootFind, RootsSatisfyOriginalGenerators) {
  for (const bool heh : {false, true}) {
    const Ideal ideal = heh ? testing::heh_ideal() : build_toy_ideal();
    const RootSet roots = solve_system(MultMatrixSet(standard_monomials(buchberger(ideal))));
    const auto res = generator_residuals(roots, ideal.generators());
    ASSERT_EQ(res.size(), roots.roots.size());
    for (const auto& per_root : res) {
      for (std::size_t k = 0; k < per_root.size(); ++k) {
        EXPECT_LT(per_root[k], 1e-6 * (1.0 + ideal.generators()[k].coefficient_norm()));
      }
    }
  }
}

TEST(RootFind, HehRootsClosedUnderConjugationAndSignFlip) {
  const RootSet roots = solve_system(testing::heh_matrices());
  ASSERT_EQ(roots.roots.size(), 8u);
  EXPECT_EQ(roots.real_count(), 4u);
  for (const Root& r : roots.roots) {
    double conj_dist = 1e300;
    double flip_dist = 1e300;
    for (const Root& s : roots.roots) {
      conj_dist = std::min(conj_dist, (s.point - r.point.conjugate()).cwiseAbs().maxCoeff());
      Eigen::VectorXcd flipped = r.point;
      flipped(0) = -flipped(0);
      flipped(1) = -flipped(1);
      flip_dist = std::min(flip_dist, (s.point - flipped).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(conj_dist, 1e-8);
    if (r.kind == RootKind::real) EXPECT_LT(flip_dist, 1e-8);
  }
}

TEST(RootFind, HehRealRootsMatchPublishedTable) {
  const RootSet roots = filter_real(solve_system(testing::heh_matrices()), 1e-8);
  ASSERT_EQ(roots.roots.size(), 4u);
  EXPECT_EQ(roots.discarded, 4u);
  const std::vector<std::vector<double>> table{{0.604062, -1.114772, -0.537546},
                                               {-0.604062, 1.114772, -0.537546},
                                               {-0.801308, -0.337484, -1.600455},
                                               {0.801308, 0.337484, -1.600455}};
  for (const auto& row : table) EXPECT_LT(nearest(roots, row).second, 1e-5);
  // Ground state against the self-consistent reference.
  const auto [ground, d] = nearest(roots, {0.801918, 0.336800, -1.597448});
  EXPECT_LT(d, 0.01);
  EXPECT_NEAR(ground->point(2).real(), -1.600455, 1e-5);
}

TEST(RootFind, PrimaryComponentMatchesDirectEigenvalues) {
  const MultMatrixSet set = testing::heh_matrices();
  for (std::size_t primary = 0; primary < 3; ++primary) {
    SolveOptions opts;
    opts.primary_variable = primary;
    const RootSet roots = solve_system(set, opts);
    const auto direct = eigen_decompose(set.transposed_double()[primary]);
    std::vector<cplx> want;
    for (const auto& p : direct) want.push_back(p.value);
    for (const Root& r : roots.roots) {
      const cplx c = r.point(static_cast<Eigen::Index>(primary));
      double best = 1e300;
      for (const cplx& w : want) best = std::min(best, std::abs(w - c));
      EXPECT_LT(best, 1e-8);
    }
    // Same root set whichever matrix is decomposed first.
    const RootSet ref = solve_system(set);
    for (const Root& r : roots.roots) {
      std::vector<double> re{r.point(0).real(), r.point(1).real(), r.point(2).real()};
      if (r.kind == RootKind::real) EXPECT_LT(nearest(ref, re).second, 1e-8);
    }
  }
}

TEST(RootFind, DegenerateEigenspaceIsSplit) {
  // Decomposing m_e first hits two double eigenvalues; the solver still
  // separates all four roots.
  SolveOptions opts;
  opts.primary_variable = 2;
  const RootSet roots = solve_system(testing::toy_matrices(), opts);
  ASSERT_EQ(roots.roots.size(), 4u);
  for (const auto& t : std::vector<std::vector<double>>{{s2, s2, -1}, {-s2, -s2, -1}, {s2, -s2, 1}, {-s2, s2, 1}}) {
    EXPECT_LT(nearest(roots, t).second, 1e-10);
  }
}

TEST(RootFind, ComplexRootsOfCircleAndLine) {
  // x^2 + y^2 = 1, y = 2: x = +-i sqrt(3).
  const Ring ring{"x", "y"};
  const Ideal ideal({parse("x^2 + y^2 - 1", ring), parse("y - 2", ring)}, MonomialOrder::lex(2));
  const RootSet roots = solve_system(MultMatrixSet(standard_monomials(buchberger(ideal))));
  ASSERT_EQ(roots.roots.size(), 2u);
  EXPECT_EQ(roots.real_count(), 0u);
  for (const Root& r : roots.roots) {
    EXPECT_EQ(r.kind, RootKind::complex);
    EXPECT_NEAR(std::abs(r.point(0).imag()), std::sqrt(3.0), 1e-10);
    EXPECT_NEAR(r.point(1).real(), 2.0, 1e-10);
  }
  EXPECT_TRUE(filter_real(roots, 1e-8).roots.empty());
}

}  // namespace
}  // namespace hfroots
