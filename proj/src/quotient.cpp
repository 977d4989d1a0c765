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

#include "hfroots/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hfroots/errors.hpp"

namespace hfroots {

QuotientBasis::QuotientBasis(std::vector<Monomial> monomials, GroebnerBasis source)
    : monomials_(std::move(monomials)), source_(std::move(source)) {}

std::optional<std::size_t> QuotientBasis::index_of(const Monomial& m) const {
  const auto it = std::find(monomials_.begin(), monomials_.end(), m);
  if (it == monomials_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - monomials_.begin());
}

RationalVector QuotientBasis::coordinates(const Polynomial& normal_form) const {
  RationalVector v = RationalVector::Constant(static_cast<Eigen::Index>(size()), Rational(0));
  for (const auto& [m, c] : normal_form.terms()) {
    const auto idx = index_of(m);
    if (!idx) {
      throw std::logic_error("term " + to_string(m, ring()) + " is not a standard monomial");
    }
    v(static_cast<Eigen::Index>(*idx)) = c;
  }
  return v;
}

RationalVector QuotientBasis::coordinates_of(const Polynomial& p) const {
  return coordinates(normal_form(p, source_));
}

std::vector<std::string> QuotientBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(monomials_.size());
  for (const auto& m : monomials_) out.push_back(to_string(m, ring()));
  return out;
}

QuotientBasis standard_monomials(const GroebnerBasis& g) {
  const Ring& ring = g.ring();
  const std::size_t n = ring.size();
  const auto leads = g.leading_monomials();

  // Staircase bound per variable from the pure-power leading monomials.
  std::vector<std::uint32_t> bound(n, 0);
  for (const auto& m : leads) {
    const int v = m.pure_power_variable();
    if (v >= 0) {
      const auto k = m[static_cast<std::size_t>(v)];
      if (bound[v] == 0 || k < bound[v]) bound[v] = k;
    }
    if (m.is_one()) {
      throw std::invalid_argument("the ideal is the whole ring; it has no roots");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (bound[v] == 0) throw NotZeroDimensional(ring.name(v));
  }

  std::vector<Monomial> standard;
  Monomial cur(n);
  // Odometer over the box [0, bound_0) x ... x [0, bound_{n-1}).
  for (;;) {
    const bool divisible = std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(cur); });
    if (!divisible) standard.push_back(cur);
    std::size_t v = 0;
    while (v < n) {
      if (++cur[v] < bound[v]) break;
      cur[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  const auto& order = g.order();
  std::sort(standard.begin(), standard.end(),
            [&](const Monomial& a, const Monomial& b) { return order.less(b, a); });
  return QuotientBasis(std::move(standard), g);
}

RationalMatrix mult_matrix(const QuotientBasis& b, std::size_t variable) {
  const Ring& ring = b.ring();
  if (variable >= ring.size()) throw RingError("variable index out of range");
  const auto dim = static_cast<Eigen::Index>(b.size());
  RationalMatrix m(dim, dim);
  const Monomial xv = Monomial::variable(ring.size(), variable);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Polynomial shifted = Polynomial::term(ring, b[static_cast<std::size_t>(j)] * xv, Rational(1));
    m.col(j) = b.coordinates_of(shifted);
  }
  return m;
}

RationalMatrix mult_matrix(const QuotientBasis& b, std::string_view variable) {
  return mult_matrix(b, b.ring().index_of(variable));
}

MultMatrixSet::MultMatrixSet(QuotientBasis basis) : basis_(std::move(basis)) {
  matrices_.reserve(basis_.ring().size());
  for (std::size_t v = 0; v < basis_.ring().size(); ++v) matrices_.push_back(mult_matrix(basis_, v));
}

std::vector<Eigen::MatrixXd> MultMatrixSet::transposed_double() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(matrices_.size());
  for (const auto& m : matrices_) out.push_back(to_double(m.transpose()));
  return out;
}

CommutationReport check_commuting(const std::vector<RationalMatrix>& matrices) {
  CommutationReport report;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      const RationalMatrix diff = matrices[i] * matrices[j] - matrices[j] * matrices[i];
      for (Eigen::Index r = 0; r < diff.rows(); ++r) {
        for (Eigen::Index c = 0; c < diff.cols(); ++c) {
          if (diff(r, c).is_zero()) continue;
          report.max_deviation = std::max(report.max_deviation, std::fabs(diff(r, c).to_double()));
          if (report.commuting) report.witness = std::make_pair(i, j);
          report.commuting = false;
        }
      }
    }
  }
  return report;
}

RationalMatrix evaluate_at_matrices(const Polynomial& p, const std::vector<RationalMatrix>& matrices) {
  if (matrices.size() != p.ring().size()) throw RingError("need one matrix per ring variable");
  if (matrices.empty()) throw std::invalid_argument("no matrices supplied");
  const auto dim = matrices.front().rows();
  RationalMatrix sum = RationalMatrix::Constant(dim, dim, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    RationalMatrix term = RationalMatrix::Identity(dim, dim) * c;
    for (std::size_t v = 0; v < m.size(); ++v) {
      for (std::uint32_t k = 0; k < m[v]; ++k) term = (term * matrices[v]).eval();
    }
    sum += term;
  }
  return sum;
}

}  // namespace hfroots
