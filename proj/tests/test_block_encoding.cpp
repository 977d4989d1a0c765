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

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "hfroots/block_encoding.hpp"
#include "hfroots/circuit.hpp"
#include "hfroots/rootfind.hpp"
#include "test_support.hpp"

namespace hfroots {
namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index n, bool complex_entries) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = complex_entries ? std::polar(std::abs(u(rng)), std::numbers::pi * u(rng)) : cplx(u(rng));
  }
  return m;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(BlockEncoding, ExtractedBlockIsScaledMatrixForRandomInputs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const Eigen::MatrixXcd a = random_matrix(rng, n, false);
    const BlockEncoding be = block_encode(a, 1.0);
    const int q = qubits_for(n);
    const Eigen::Index big = Eigen::Index{1} << q;
    EXPECT_EQ(be.signal_qubits, q);
    EXPECT_EQ(be.ancilla_qubits, q + 1);
    ASSERT_EQ(be.unitary.rows(), Eigen::Index{1} << (2 * q + 1));
    // Direct indexing: <0|<0^n|<i| U |0>|0^n>|j> = a_ij / 2^n, zero in the padding.
    for (Eigen::Index i = 0; i < big; ++i) {
      for (Eigen::Index j = 0; j < big; ++j) {
        const cplx want = (i < n && j < n) ? a(i, j) / static_cast<double>(big) : 0.0;
        EXPECT_NEAR(std::abs(be.unitary(i, j) - want), 0.0, 1e-10);
      }
    }
    EXPECT_LT(max_abs(be.decoded().topLeftCorner(n, n) - a), 1e-10);
    EXPECT_LT(be.unitarity_error(), 1e-12);
  }
}

TEST(BlockEncoding, ComplexEntriesAndAlphaScaling) {
  std::mt19937_64 rng(8);
  const Eigen::MatrixXcd a = 3.0 * random_matrix(rng, 4, true);
  const BlockEncoding be = block_encode(a);
  EXPECT_NEAR(be.alpha, 1.0 / max_abs(a), 1e-15);
  EXPECT_LT(max_abs(be.block() - be.alpha * a / 4.0), 1e-12);
  EXPECT_LT(max_abs(be.decoded() - a), 1e-10);
  EXPECT_LT(be.unitarity_error(), 1e-12);
  EXPECT_THROW(query_oracle(a, 1.0), std::domain_error);
  EXPECT_THROW(query_oracle(Eigen::MatrixXcd::Identity(3, 3)), std::domain_error);
}

TEST(BlockEncoding, OracleRotationPerEntry) {
  Eigen::MatrixXcd a(2, 2);
  a << 0.3, -0.7, 0.0, 1.0;
  const Eigen::MatrixXcd o = query_oracle(a);
  const Eigen::Index n2 = 4;
  for (Eigen::Index idx = 0; idx < n2; ++idx) {
    const double theta = std::acos(a(idx / 2, idx % 2).real());
    EXPECT_NEAR(o(idx, idx).real(), std::cos(theta), 1e-15);
    EXPECT_NEAR(o(n2 + idx, idx).real(), std::sin(theta), 1e-15);
    EXPECT_NEAR(o(idx, n2 + idx).real(), -std::sin(theta), 1e-15);
    EXPECT_NEAR(o(n2 + idx, n2 + idx).real(), std::cos(theta), 1e-15);
  }
  EXPECT_LT(max_abs(o.adjoint() * o - Eigen::MatrixXcd::Identity(8, 8)), 1e-15);
}

TEST(BlockEncoding, ToyAndHehMatrices) {
  for (const bool heh : {false, true}) {
    const MultMatrixSet set = heh ? testing::heh_matrices() : testing::toy_matrices();
    for (const Eigen::MatrixXd& m : set.transposed_double()) {
      const BlockEncoding be = block_encode(m, 1.0 / m.cwiseAbs().maxCoeff());
      EXPECT_LT(max_abs(be.decoded().topLeftCorner(m.rows(), m.cols()) - m.cast<cplx>()), 1e-10);
      EXPECT_LT(be.unitarity_error(), 1e-12);
    }
  }
}

TEST(MatrixExp, MatchesSpectralOracleForSymmetricInput) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 6; ++n) {
    Eigen::MatrixXd s = random_matrix(rng, n, false).real();
    s = (s + s.transpose()).eval() * 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXcd phases = (es.eigenvalues().cast<cplx>() * cplx(0, -1)).array().exp();
    const Eigen::MatrixXcd want = es.eigenvectors().cast<cplx>() * phases.asDiagonal() *
                                  es.eigenvectors().transpose().cast<cplx>();
    EXPECT_LT(max_abs(matrix_exp(s) - want), 1e-12);
  }
}

TEST(MatrixExp, MatchesTaylorSeriesForNonNormalInput) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXcd m = 0.3 * random_matrix(rng, 5, true);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(5, 5);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 40; ++k) {
    term = (term * (cplx(0, -1) * m) / static_cast<double>(k)).eval();
    sum += term;
  }
  EXPECT_LT(max_abs(matrix_exp(m) - sum), 1e-13);
}

TEST(BlockEncoding, KronAndHadamard) {
  const Eigen::MatrixXcd h3 = hadamard_power(3);
  EXPECT_LT(max_abs(h3 * h3 - Eigen::MatrixXcd::Identity(8, 8)), 1e-14);
  EXPECT_LT(max_abs(h3.cwiseAbs() - Eigen::MatrixXd::Constant(8, 8, 1.0 / std::sqrt(8.0)).cast<cplx>()), 1e-15);
  Eigen::MatrixXcd a(1, 2), b(2, 1);
  a << 1.0, 2.0;
  b << 3.0, cplx(0, 1);
  const Eigen::MatrixXcd k = kron(a, b);
  ASSERT_EQ(k.rows(), 2);
  ASSERT_EQ(k.cols(), 2);
  EXPECT_EQ(k(1, 1), cplx(0, 2));
  EXPECT_EQ(pad_to_power_of_two(Eigen::MatrixXcd::Zero(3, 3), 1.0)(3, 3), cplx(1.0));
}

TEST(Circuit, GateConventions) {
  Circuit c{1, {Gate{"RY", {0}, {}, 0.4}}};
  Eigen::MatrixXcd ry(2, 2);
  ry << std::cos(0.2), -std::sin(0.2), std::sin(0.2), std::cos(0.2);
  EXPECT_LT(max_abs(circuit_unitary(c) - ry), 1e-15);
  c.gates = {Gate{"RZ", {0}, {}, 0.4}};
  EXPECT_NEAR(std::abs(circuit_unitary(c)(0, 0) - std::polar(1.0, -0.2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(circuit_unitary(c)(1, 1) - std::polar(1.0, 0.2)), 0.0, 1e-15);

  // Qubit 0 is the most significant bit.
  const Circuit cnot{2, {Gate{"CNOT", {1}, {0}, 0.0}}};
  const Eigen::MatrixXcd u = circuit_unitary(cnot);
  EXPECT_EQ(u(3, 2), cplx(1.0));
  EXPECT_EQ(u(1, 1), cplx(1.0));
  const Circuit swap{2, {Gate{"SWAP", {0, 1}, {}, 0.0}}};
  EXPECT_EQ(circuit_unitary(swap)(2, 1), cplx(1.0));

  Eigen::VectorXcd st = Eigen::VectorXcd::Zero(2);
  EXPECT_THROW(apply_gate(Gate{"CNOT", {0}, {}, 0.0}, st, 1), std::invalid_argument);
  EXPECT_THROW(apply_gate(Gate{"TOFFOLI", {0}, {}, 0.0}, st, 1), std::invalid_argument);
  EXPECT_THROW(apply_gate(Gate{"H", {3}, {}, 0.0}, st, 1), std::invalid_argument);
}

TEST(Circuit, WalshHadamardAndGrayCode) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(8);
  for (auto& x : v) x = u(rng);
  const std::vector<double> w = walsh_hadamard(v);
  for (std::size_t i = 0; i < 8; ++i) {
    double want = 0.0;
    for (std::size_t j = 0; j < 8; ++j) want += ((std::popcount(i & j) % 2) ? -1.0 : 1.0) * v[j];
    EXPECT_NEAR(w[i], want, 1e-14);
  }
  for (std::size_t k = 0; k + 1 < 64; ++k) EXPECT_EQ(std::popcount(gray_code(k) ^ gray_code(k + 1)), 1);
}

TEST(Fable, LosslessCircuitEqualsDenseConstruction) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Eigen::MatrixXcd a = random_matrix(rng, n, trial >= 3);
    const FableCircuit f = fable_compress(a, 0.0, 1.0);
    const BlockEncoding dense = block_encode(a, 1.0);
    EXPECT_LT(max_abs(f.encoding().unitary - dense.unitary), 1e-10);
    EXPECT_EQ(f.rotations_after, f.rotations_before);
  }
}

TEST(Fable, PruningShrinksCircuitWithBoundedError) {
  const FableCircuit id = fable_compress(Eigen::MatrixXd::Identity(4, 4), 1e-8);
  EXPECT_EQ(id.rotations_before, 16u);
  EXPECT_EQ(id.rotations_after, 4u);
  EXPECT_LT(id.cnots_after, id.cnots_before);
  EXPECT_LT(max_abs(id.encoding().decoded() - Eigen::MatrixXcd::Identity(4, 4)), 1e-12);

  std::mt19937_64 rng(13);
  Eigen::MatrixXcd a = random_matrix(rng, 4, false);
  a(0, 0) = 0.0;
  for (const double tol : {1e-3, 1e-2, 5e-2}) {
    const FableCircuit f = fable_compress(a, tol, 1.0);
    const double dropped = static_cast<double>(f.rotations_before - f.rotations_after);
    EXPECT_LE(f.rotations_after, f.rotations_before);
    EXPECT_EQ(f.circuit.count("RY"), f.rotations_after);
    // Each dropped angle shifts every entry's rotation by at most tol.
    EXPECT_LE(max_abs(f.encoding().block() - a / 4.0), dropped * tol / 4.0 + 1e-12);
    EXPECT_LT(f.encoding().unitarity_error(), 1e-12);
  }
}

struct ExpectationRow {
  std::size_t variable;
  double value;
  cplx exp_value;
};

// Expectations of M^T and exp(-i M^T) in |phi>, with exp(-i M^T) also taken
// through the block encoding and through the FABLE circuit.
void check_rows(const std::vector<Eigen::MatrixXd>& mt, const Eigen::VectorXcd& phi,
                const std::vector<ExpectationRow>& rows) {
  for (const ExpectationRow& row : rows) {
    const Eigen::MatrixXd& m = mt[row.variable];
    EXPECT_NEAR(std::abs(rayleigh_quotient(m, phi) - cplx(row.value)), 0.0, 1e-6);
    const Eigen::MatrixXcd u = matrix_exp(m);
    const cplx direct = phi.dot(u * phi);
    EXPECT_NEAR(std::abs(direct - row.exp_value), 0.0, 1e-6) << direct;

    const Eigen::Index big = Eigen::Index{1} << qubits_for(m.rows());
    Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(big);
    padded.head(phi.size()) = phi;
    const cplx via_block = padded.dot(block_encode(u).decoded() * padded);
    const cplx via_fable = padded.dot(fable_compress(u, 0.0).encoding().decoded() * padded);
    EXPECT_NEAR(std::abs(via_block - direct), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(via_fable - direct), 0.0, 1e-10);
  }
}

TEST(Expectations, ToyTable) {
  const auto mt = testing::toy_matrices().transposed_double();
  const double s2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd phi1(4), phi2(4);
  phi1 << -s2, s2, -1.0, 1.0;  // e = -1, x = y = 1/sqrt 2
  phi2 << -s2, -s2, 1.0, 1.0;  // e = 1, x = -y = 1/sqrt 2
  phi1.normalize();
  phi2.normalize();
  check_rows(mt, phi1,
             {{0, 0.707107, {0.760245, -0.649637}},
              {1, 0.707107, {0.760245, -0.649637}},
              {2, -1.0, {0.540302, 0.841471}}});
  check_rows(mt, phi2,
             {{0, 0.707107, {0.760245, -0.649637}},
              {1, -0.707107, {0.760245, 0.649637}},
              {2, 1.0, {0.540302, -0.841471}}});
}

TEST(Expectations, HehTable) {
  const MultMatrixSet set = testing::heh_matrices();
  const auto mt = set.transposed_double();
  // Real eigenvectors of m_y^T, keyed by their eigenvalue.
  const std::vector<std::pair<double, std::vector<ExpectationRow>>> table{
      {-1.114772,
       {{0, 0.604062, {0.823035, -0.567990}}, {1, -1.114772, {0.440383, 0.897810}},
        {2, -0.537546, {0.858968, 0.512030}}}},
      {1.114772,
       {{0, -0.604062, {0.823035, 0.567990}}, {1, 1.114772, {0.440383, -0.897810}},
        {2, -0.537546, {0.858968, 0.512030}}}},
      {-0.337484,
       {{0, -0.801308, {0.695768, 0.718267}}, {1, -0.337484, {0.943591, 0.331114}},
        {2, -1.600455, {-0.029654, 0.999560}}}},
      {0.337484,
       {{0, 0.801308, {0.695768, -0.718267}}, {1, 0.337484, {0.943591, -0.331114}},
        {2, -1.600455, {-0.029654, 0.999560}}}},
  };
  const auto pairs = eigen_decompose(mt[1]);
  for (const auto& [eig, rows] : table) {
    const EigenPair* match = nullptr;
    for (const EigenPair& p : pairs) {
      if (std::abs(p.value - cplx(eig)) < 1e-5) match = &p;
    }
    ASSERT_NE(match, nullptr) << eig;
    check_rows(mt, match->vector, rows);
  }
}

}  // namespace
}  // namespace hfroots
