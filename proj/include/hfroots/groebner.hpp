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
#include <cstdint>
#include <span>
#include <vector>

#include "hfroots/polynomial.hpp"

namespace hfroots {

/// Generators of a polynomial ideal together with the order used to process it.
class Ideal {
 public:
  /// Throws if `generators` is empty, holds a zero polynomial, or mixes rings.
  Ideal(std::vector<Polynomial> generators, MonomialOrder order);

  const Ring& ring() const { return generators_.front().ring(); }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const MonomialOrder& order() const { return order_; }

 private:
  std::vector<Polynomial> generators_;
  MonomialOrder order_;
};

class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<Polynomial> elements, MonomialOrder order, bool reduced)
      : elements_(std::move(elements)), order_(std::move(order)), reduced_(reduced) {}

  const std::vector<Polynomial>& elements() const { return elements_; }
  const MonomialOrder& order() const { return order_; }
  const Ring& ring() const { return elements_.front().ring(); }
  bool reduced() const { return reduced_; }
  std::vector<Monomial> leading_monomials() const;

 private:
  std::vector<Polynomial> elements_;
  MonomialOrder order_;
  bool reduced_;
};

struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division. The first basis element whose leading monomial divides
/// the current leading term is used; undivisible terms move to the remainder.
Division reduce(const Polynomial& p, std::span<const Polynomial> basis, const MonomialOrder& order);

/// Remainder only; skips quotient bookkeeping.
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis, const MonomialOrder& order);
inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g) {
  return normal_form(p, g.elements(), g.order());
}

/// (L/LT(f)) f - (L/LT(g)) g with L the lcm of the leading monomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

struct BuchbergerLimits {
  std::uint64_t max_pair_reductions = 1'000'000;
  std::uint32_t max_total_degree = 60;
};

struct BuchbergerStats {
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_skipped_coprime = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
};

/// Reduced Groebner basis: every element monic, no term of any element divisible by
/// another element's leading monomial, sorted ascending by leading monomial.
/// Throws ResourceLimitExceeded when a cap in `limits` is hit.
GroebnerBasis buchberger(const Ideal& ideal, const BuchbergerLimits& limits = {},
                         BuchbergerStats* stats = nullptr);

/// Inter-reduces and normalizes an arbitrary Groebner basis into reduced form.
std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis, const MonomialOrder& order);

/// Buchberger criterion: every pairwise S-polynomial has zero normal form.
bool satisfies_buchberger_criterion(std::span<const Polynomial> basis, const MonomialOrder& order);

/// Divides by the leading coefficient.
Polynomial make_monic(const Polynomial& p, const MonomialOrder& order);

}  // namespace hfroots
