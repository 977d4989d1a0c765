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
#include "hfroots/inverse_power.hpp"

namespace hfroots {
namespace {

// A = Q diag(d) Q^-1 with a random well-conditioned Q, so eigen-coordinates
// of any iterate are Q^-1 x.
struct Planted {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd q;
  Eigen::VectorXcd d;
};

Planted planted(std::mt19937_64& rng, const Eigen::VectorXcd& d) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const Eigen::Index n = d.size();
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] += cplx(u(rng), u(rng));
  return {q * d.asDiagonal() * q.inverse(), q, d};
}

TEST(InversePower, ComponentRatiosFollowAnalyticRate) {
  std::mt19937_64 rng(10);
  Eigen::VectorXcd d(4);
  d << 1.0, 2.0, cplx(3.0, 0.5), 5.0;
  const Planted p = planted(rng, d);
  const cplx shift(1.3, 0.1);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Ones(4).normalized();
  InversePowerOptions opts;
  opts.iterations = 30;
  opts.keep_history = true;
  const FilteredState st = inverse_power(p.a, shift, psi0, opts);
  ASSERT_EQ(st.history.size(), 31u);

  const Eigen::MatrixXcd qinv = p.q.inverse();
  const Eigen::VectorXcd c0 = qinv * psi0;
  for (std::size_t k = 0; k < st.history.size(); ++k) {
    const Eigen::VectorXcd c = qinv * st.history[k];
    for (Eigen::Index j = 1; j < 4; ++j) {
      // |c_j / c_0| after k steps = |c_j / c_0|_initial * |(d_0 - s) / (d_j - s)|^k.
      const double rate = std::abs((d(0) - shift) / (d(j) - shift));
      const double want = std::abs(c0(j) / c0(0)) * std::pow(rate, static_cast<double>(k));
      EXPECT_NEAR(std::abs(c(j) / c(0)), want, 1e-8 * std::max(1.0, want)) << k << " " << j;
    }
    EXPECT_NEAR(st.history[k].norm(), 1.0, 1e-12);
  }
  EXPECT_TRUE(st.converged);
  EXPECT_NEAR(std::abs(st.rayleigh - d(0)), 0.0, 1e-8);
}

TEST(InversePower, ConjugatePairWithComplexShift) {
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, 1.0, -1.0, 1.0;  // eigenvalues 1 +- i
  const FilteredState st = inverse_power(a, cplx(1.0, -0.9), Eigen::VectorXcd::Ones(2).normalized());
  EXPECT_TRUE(st.converged);
  EXPECT_NEAR(std::abs(st.rayleigh - cplx(1.0, -1.0)), 0.0, 1e-8);
  EXPECT_LT(st.residual, 1e-8);
}

TEST(InversePower, MidpointShiftStallsAndRetryResolvesIt) {
  Eigen::MatrixXcd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;  // eigenvalues 1 and 3, shift 2 is equidistant
  Eigen::VectorXcd psi0(2);
  psi0 << 1.0, 0.0;
  InversePowerOptions opts;
  opts.iterations = 200;
  opts.max_retries = 0;
  const FilteredState stuck = inverse_power(a, 2.0, psi0, opts);
  EXPECT_FALSE(stuck.converged);
  EXPECT_NEAR(stuck.rayleigh.real(), 2.0, 1e-12);

  opts.max_retries = 3;
  const auto states = inverse_power_filter(a, {cplx(2.0)}, psi0, opts);
  ASSERT_EQ(states.size(), 1u);
  const FilteredState& fixed = states.front();
  EXPECT_TRUE(fixed.converged);
  EXPECT_EQ(fixed.retries, 1);
  EXPECT_EQ(fixed.requested_shift, cplx(2.0));
  EXPECT_NEAR(std::abs(fixed.shift - cplx(2.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fixed.rayleigh - cplx(3.0)), 0.0, 1e-8);
}

TEST(InversePower, ShiftOnEigenvalueIsRejected) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a.diagonal() << 1.0, 2.0, 5.0;
  try {
    inverse_power(a, 2.0, Eigen::VectorXcd::Ones(3));
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("condition"), std::string::npos);
  }
  EXPECT_NO_THROW(inverse_power(a, 2.0 + 1e-6, Eigen::VectorXcd::Ones(3)));
}

TEST(InversePower, FilterReturnsOneStatePerShift) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a.diagonal() << 1.0, 2.0, 5.0;
  const auto states = inverse_power_filter(a, {cplx(1.1), cplx(4.6)}, Eigen::VectorXcd::Ones(3).normalized());
  ASSERT_EQ(states.size(), 2u);
  EXPECT_NEAR(std::abs(states[0].state(0)), 1.0, 1e-8);
  EXPECT_NEAR(std::abs(states[1].state(2)), 1.0, 1e-8);
  EXPECT_GT(states[0].condition_number, 1.0);
  EXPECT_TRUE(states[0].history.empty());
}

TEST(InversePower, RejectsBadInput) {
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(inverse_power(a, 0.5, Eigen::VectorXcd::Zero(2)), std::invalid_argument);
  EXPECT_THROW(inverse_power(a, 0.5, Eigen::VectorXcd::Ones(3)), std::invalid_argument);
}

}  // namespace
}  // namespace hfroots
