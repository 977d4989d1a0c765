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

#include "hfroots/errors.hpp"
#include "hfroots/groebner.hpp"
#include "hfroots/hf_builder.hpp"
#include "test_support.hpp"

namespace hfroots {
namespace {

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts, const Ring& ring) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse(t, ring));
  return out;
}

bool same_set(std::vector<Polynomial> a, std::vector<Polynomial> b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    auto it = std::find(b.begin(), b.end(), p);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

TEST(Groebner, ToyBasisIsMonicFormOfPrintedBasis) {
  const GroebnerBasis g = buchberger(build_toy_ideal());
  const Ring& ring = g.ring();
  EXPECT_TRUE(g.reduced());
  EXPECT_TRUE(same_set(g.elements(), parse_all({"e^2 - 1", "y^2 - 1/2", "x + y*e"}, ring)));
  // The printed 2y^2 - 1 agrees up to scalar.
  EXPECT_EQ(make_monic(parse("2*y^2 - 1", ring), g.order()), parse("y^2 - 1/2", ring));
}

TEST(Groebner, TextbookExampleUnderDegrevlex) {
  // (x^3 - 2xy, x^2 y - 2y^2 + x) has reduced basis {x^2, xy, y^2 - x/2}.
  const Ring ring{"x", "y"};
  const Ideal ideal(parse_all({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}, ring), MonomialOrder::degrevlex(2));
  const GroebnerBasis g = buchberger(ideal);
  EXPECT_TRUE(same_set(g.elements(), parse_all({"x^2", "x*y", "y^2 - 1/2*x"}, ring)));
}

TEST(Groebner, InconsistentSystemGivesUnitIdeal) {
  const Ring ring{"x", "y"};
  const GroebnerBasis g =
      buchberger(Ideal(parse_all({"x*y - 1", "x", "y^2 + 1"}, ring), MonomialOrder::lex(2)));
  ASSERT_EQ(g.elements().size(), 1u);
  EXPECT_EQ(g.elements()[0], Polynomial::constant(ring, 1));
}

TEST(Groebner, DivisionReconstructsDividend) {
  std::mt19937_64 rng(3);
  const GroebnerBasis g = buchberger(build_toy_ideal());
  for (int i = 0; i < 30; ++i) {
    const Polynomial p = testing::random_polynomial(rng, g.ring(), 5, 6);
    const Division d = reduce(p, g.elements(), g.order());
    Polynomial sum = d.remainder;
    for (std::size_t k = 0; k < d.quotients.size(); ++k) sum += d.quotients[k] * g.elements()[k];
    EXPECT_EQ(sum, p);
    // No remainder term is divisible by a leading monomial.
    for (const auto& [m, c] : d.remainder.terms()) {
      for (const Monomial& lm : g.leading_monomials()) EXPECT_FALSE(lm.divides(m));
    }
  }
}

struct NamedIdeal {
  const char* name;
  Ideal (*make)();
};

Ideal toy() { return build_toy_ideal(); }
Ideal heh() { return testing::heh_ideal(); }
Ideal cyclic3() {
  const Ring ring{"a", "b", "c"};
  return Ideal(parse_all({"a + b + c", "a*b + b*c + c*a", "a*b*c - 1"}, ring), MonomialOrder::degrevlex(3));
}
Ideal qubo2() { return build_qubo_ideal(QuboSpec::uniform(2, {Rational(-1), Rational(2)})); }

class GroebnerProperties : public ::testing::TestWithParam<NamedIdeal> {};

TEST_P(GroebnerProperties, CriterionMembershipNormalForm) {
  const Ideal ideal = GetParam().make();
  const GroebnerBasis g = buchberger(ideal);
  EXPECT_TRUE(satisfies_buchberger_criterion(g.elements(), g.order()));
  for (const Polynomial& f : ideal.generators()) EXPECT_TRUE(normal_form(f, g).is_zero());

  // Reduced: monic, and no element term divisible by another leading monomial.
  const auto lms = g.leading_monomials();
  for (std::size_t i = 0; i < g.elements().size(); ++i) {
    EXPECT_TRUE(leading_term(g.elements()[i], g.order()).second.is_one());
    for (const auto& [m, c] : g.elements()[i].terms()) {
      for (std::size_t j = 0; j < lms.size(); ++j) {
        if (j != i) EXPECT_FALSE(lms[j].divides(m));
      }
    }
  }

  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const Polynomial p = testing::random_polynomial(rng, g.ring(), 4);
    const Polynomial q = testing::random_polynomial(rng, g.ring(), 4);
    const Rational a = testing::random_rational(rng);
    const Rational b = testing::random_rational(rng);
    const Polynomial np = normal_form(p, g);
    EXPECT_EQ(normal_form(np, g), np);
    EXPECT_EQ(normal_form(a * p + b * q, g), a * np + b * normal_form(q, g));
  }
}

TEST_P(GroebnerProperties, InvariantUnderGeneratorPermutation) {
  const Ideal ideal = GetParam().make();
  const GroebnerBasis reference = buchberger(ideal);
  std::vector<Polynomial> gens = ideal.generators();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 3; ++i) {
    std::shuffle(gens.begin(), gens.end(), rng);
    EXPECT_EQ(buchberger(Ideal(gens, ideal.order())).elements(), reference.elements());
  }
}

INSTANTIATE_TEST_SUITE_P(Ideals, GroebnerProperties,
                         ::testing::Values(NamedIdeal{"toy", toy}, NamedIdeal{"heh", heh},
                                           NamedIdeal{"cyclic3", cyclic3}, NamedIdeal{"qubo2", qubo2}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Groebner, SPolynomialCancelsLeadingTerms) {
  const Ring ring{"x", "y"};
  const MonomialOrder o = MonomialOrder::lex(2);
  const Polynomial s = s_polynomial(parse("x^2*y - 1", ring), parse("x*y^2 - x", ring), o);
  EXPECT_EQ(s, parse("x^2 - y", ring));
}

TEST(Groebner, ReduceBasisCanonicalizesNonReducedInput) {
  const GroebnerBasis g = buchberger(build_toy_ideal());
  std::vector<Polynomial> messy = g.elements();
  messy.push_back(g.elements()[0] * parse("x + 3", g.ring()));
  for (auto& p : messy) p *= Rational(7);
  EXPECT_EQ(reduce_basis(messy, g.order()), g.elements());
}

TEST(Groebner, ResourceCapsThrow) {
  BuchbergerLimits tiny;
  tiny.max_pair_reductions = 1;
  EXPECT_THROW(buchberger(testing::heh_ideal(), tiny), ResourceLimitExceeded);
  BuchbergerLimits shallow;
  shallow.max_total_degree = 2;
  EXPECT_THROW(buchberger(testing::heh_ideal(), shallow), ResourceLimitExceeded);
}

TEST(Groebner, StatsCountPairs) {
  BuchbergerStats stats;
  buchberger(build_toy_ideal(), {}, &stats);
  EXPECT_GT(stats.pairs_considered, 0u);
  EXPECT_EQ(stats.pairs_considered, stats.pairs_reduced + stats.pairs_skipped_coprime);
}

TEST(Ideal, RejectsBadGenerators) {
  const Ring ring{"x"};
  EXPECT_THROW(Ideal({}, MonomialOrder::lex(1)), std::invalid_argument);
  EXPECT_THROW(Ideal({Polynomial(ring)}, MonomialOrder::lex(1)), std::invalid_argument);
}

}  // namespace
}  // namespace hfroots
