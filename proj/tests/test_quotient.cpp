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

#include <algorithm>
#include <random>
#include <set>

#include "hfroots/errors.hpp"
#include "hfroots/quotient.hpp"
#include "test_support.hpp"

namespace hfroots {
namespace {

RationalMatrix rational_matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

RationalVector row_times(const RationalVector& w, const RationalMatrix& m) {
  return (w.transpose() * m).transpose();
}

const Rational half = Rational(1) / Rational(2);

TEST(Quotient, ToyBasisMatchesPrintedOrder) {
  const MultMatrixSet set = testing::toy_matrices();
  EXPECT_EQ(set.basis().labels(), (std::vector<std::string>{"y*e", "y", "e", "1"}));
}

TEST(Quotient, ToyMatricesBitExact) {
  const MultMatrixSet set = testing::toy_matrices();
  const RationalMatrix mx = rational_matrix({{0, 0, 0, -1}, {0, 0, -1, 0}, {0, -half, 0, 0}, {-half, 0, 0, 0}});
  const RationalMatrix my = rational_matrix({{0, 0, 1, 0}, {0, 0, 0, 1}, {half, 0, 0, 0}, {0, half, 0, 0}});
  // The printed m_e leaves entry (0, 2) blank; it is zero.
  const RationalMatrix me = rational_matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  EXPECT_EQ(set.of("x"), mx);
  EXPECT_EQ(set.of("y"), my);
  EXPECT_EQ(set.of("e"), me);
}

class QuotientProperties : public ::testing::TestWithParam<bool> {};

TEST_P(QuotientProperties, RepresentationSoundness) {
  const MultMatrixSet set = GetParam() ? testing::heh_matrices() : testing::toy_matrices();
  const GroebnerBasis& g = set.basis().source();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Polynomial p = testing::random_polynomial(rng, set.ring(), 4, 4);
    const RationalVector c = set.basis().coordinates_of(p);
    for (std::size_t v = 0; v < set.ring().size(); ++v) {
      const Polynomial pv = p * Polynomial::variable(set.ring(), v);
      EXPECT_EQ(set.basis().coordinates_of(pv), RationalVector(set[v] * c));
    }
    // Coordinates reconstruct the normal form.
    Polynomial back(set.ring());
    for (std::size_t k = 0; k < set.dimension(); ++k) {
      back.add_term(set.basis()[k], c(static_cast<Eigen::Index>(k)));
    }
    EXPECT_EQ(back, normal_form(p, g));
  }
}

TEST_P(QuotientProperties, MatricesSatisfyBasisRelationsAndCommute) {
  const MultMatrixSet set = GetParam() ? testing::heh_matrices() : testing::toy_matrices();
  const auto n = static_cast<Eigen::Index>(set.dimension());
  for (const Polynomial& g : set.basis().source().elements()) {
    EXPECT_EQ(evaluate_at_matrices(g, set.matrices()), RationalMatrix::Constant(n, n, Rational(0)));
  }
  const CommutationReport report = check_commuting(set);
  EXPECT_TRUE(report.commuting);
  EXPECT_EQ(report.max_deviation, 0.0);
}

TEST_P(QuotientProperties, StandardMonomialsAreNotDivisibleAndSortedDescending) {
  const MultMatrixSet set = GetParam() ? testing::heh_matrices() : testing::toy_matrices();
  const QuotientBasis& b = set.basis();
  const auto leads = b.source().leading_monomials();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (const Monomial& lm : leads) EXPECT_FALSE(lm.divides(b[i]));
    if (i + 1 < b.size()) EXPECT_TRUE(b.source().order().less(b[i + 1], b[i]));
  }
}

INSTANTIATE_TEST_SUITE_P(Systems, QuotientProperties, ::testing::Values(false, true),
                         [](const auto& info) { return std::string(info.param ? "heh" : "toy"); });

TEST(Quotient, HehBasisHasEightStandardMonomials) {
  const MultMatrixSet set = testing::heh_matrices();
  const auto labels = set.basis().labels();
  const std::set<std::string> got(labels.begin(), labels.end());
  EXPECT_EQ(got, (std::set<std::string>{"y^2", "x*e", "y*e", "e^2", "x", "y", "e", "1"}));
  EXPECT_EQ(labels.size(), 8u);
}

TEST(Quotient, DegenerateEigenspaceBasisPitfall) {
  // w1, w2 span the e = -1 left eigenspace of m_e, yet neither is a left
  // eigenvector of m_x: a simultaneous eigenbasis must be chosen with care.
  const MultMatrixSet set = testing::toy_matrices();
  RationalVector w1(4), w2(4);
  w1 << 0, 0, -1, 1;
  w2 << -1, 1, 0, 0;
  EXPECT_EQ(row_times(w1, set.of("e")), RationalVector(-w1));
  EXPECT_EQ(row_times(w2, set.of("e")), RationalVector(-w2));

  RationalVector w1mx(4), w2mx(4);
  w1mx << -half, half, 0, 0;
  w2mx << 0, 0, -1, 1;
  EXPECT_EQ(row_times(w1, set.of("x")), w1mx);
  EXPECT_EQ(row_times(w2, set.of("x")), w2mx);
  // Neither image is parallel to its input.
  EXPECT_NE(w1mx(0) * w1(2), w1mx(2) * w1(0));
  EXPECT_NE(w2mx(0) * w2(2), w2mx(2) * w2(0));
}

TEST(Quotient, PositiveDimensionalIdealIsRejected) {
  const Ring ring{"x", "y"};
  const GroebnerBasis g = buchberger(Ideal({parse("x*y - 1", ring)}, MonomialOrder::lex(2)));
  EXPECT_THROW(standard_monomials(g), NotZeroDimensional);
}

TEST(Quotient, NonCommutingMatricesAreReported) {
  RationalMatrix a = RationalMatrix::Zero(2, 2);
  RationalMatrix b = RationalMatrix::Zero(2, 2);
  a(0, 1) = 1;
  b(1, 0) = 1;
  const CommutationReport r = check_commuting(std::vector<RationalMatrix>{a, b});
  EXPECT_FALSE(r.commuting);
  EXPECT_EQ(r.max_deviation, 1.0);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(Quotient, CoordinatesOfUnreducedInputUseNormalForm) {
  const MultMatrixSet set = testing::toy_matrices();
  const Polynomial x = Polynomial::variable(set.ring(), "x");
  // x = -y e in the quotient.
  RationalVector expected(4);
  expected << -1, 0, 0, 0;
  EXPECT_EQ(set.basis().coordinates_of(x), expected);
}

}  // namespace
}  // namespace hfroots
