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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfroots/groebner.hpp"
#include "hfroots/rational.hpp"

namespace hfroots {

/// Standard monomials of a zero-dimensional ideal, sorted descending under the
/// basis order. These are the coordinates of the quotient ring.
class QuotientBasis {
 public:
  QuotientBasis(std::vector<Monomial> monomials, GroebnerBasis source);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  const GroebnerBasis& source() const { return source_; }
  const Ring& ring() const { return source_.ring(); }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }

  std::optional<std::size_t> index_of(const Monomial& m) const;

  /// Coordinates of a polynomial that is already in normal form.
  RationalVector coordinates(const Polynomial& normal_form) const;
  /// Coordinates of normal_form(p).
  RationalVector coordinates_of(const Polynomial& p) const;

  std::vector<std::string> labels() const;

 private:
  std::vector<Monomial> monomials_;
  GroebnerBasis source_;
};

/// Throws NotZeroDimensional when some variable has no pure power among the
/// leading monomials of `g`.
QuotientBasis standard_monomials(const GroebnerBasis& g);

/// Column j holds the coordinates of normal_form(b[j] * x_v), so that
/// x_v * b = b * M with b read as a row vector.
RationalMatrix mult_matrix(const QuotientBasis& b, std::size_t variable);
RationalMatrix mult_matrix(const QuotientBasis& b, std::string_view variable);

/// Multiplication matrices for every ring variable, in ring order.
class MultMatrixSet {
 public:
  explicit MultMatrixSet(QuotientBasis basis);

  const QuotientBasis& basis() const { return basis_; }
  const Ring& ring() const { return basis_.ring(); }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<RationalMatrix>& matrices() const { return matrices_; }
  const RationalMatrix& operator[](std::size_t variable) const { return matrices_[variable]; }
  const RationalMatrix& of(std::string_view variable) const { return matrices_[ring().index_of(variable)]; }

  /// Double-precision copies of the transposes; these carry the right
  /// eigenvectors used for root extraction.
  std::vector<Eigen::MatrixXd> transposed_double() const;

 private:
  QuotientBasis basis_;
  std::vector<RationalMatrix> matrices_;
};

struct CommutationReport {
  bool commuting = true;
  /// Largest |(AB - BA)_ij| over all pairs, as a double.
  double max_deviation = 0.0;
  /// First offending pair of matrix indices, if any.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Exact pairwise commutation check.
CommutationReport check_commuting(const std::vector<RationalMatrix>& matrices);
inline CommutationReport check_commuting(const MultMatrixSet& set) { return check_commuting(set.matrices()); }

/// Evaluates p at a tuple of commuting matrices (one per ring variable).
RationalMatrix evaluate_at_matrices(const Polynomial& p, const std::vector<RationalMatrix>& matrices);

}  // namespace hfroots
