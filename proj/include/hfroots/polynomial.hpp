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

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "hfroots/errors.hpp"
#include "hfroots/rational.hpp"

namespace hfroots {

/// Ordered list of variable names. Copies share storage; equality is by names.
class Ring {
 public:
  Ring() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit Ring(std::vector<std::string> names);
  Ring(std::initializer_list<const char*> names);

  std::size_t size() const { return names_->size(); }
  const std::vector<std::string>& names() const { return *names_; }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }

  /// Index of `name`, or throws RingError.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector, one entry per ring variable. Storage comparison (operator<=>)
/// is plain lexicographic on the vector and has nothing to do with any MonomialOrder.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exponents_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {}
  Monomial(std::initializer_list<std::uint32_t> exponents) : exponents_(exponents) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const { return exponents_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }

  std::uint32_t degree() const;
  bool is_one() const;

  /// True when every exponent of *this is <= the matching exponent of `other`.
  bool divides(const Monomial& other) const;

  /// Index of the single variable in a pure power x_i^k (k >= 1), else -1.
  int pure_power_variable() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exponents_;
};

enum class OrderKind { lex, degrevlex };

/// Monomial order with an explicit variable precedence. precedence()[0] is the
/// ring index of the largest variable.
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence);

  /// Precedence equal to ring declaration order.
  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder degrevlex(std::size_t nvars);
  /// Precedence given by variable names, largest first, e.g. {"x","y","e"}.
  static MonomialOrder named(OrderKind kind, const Ring& ring, const std::vector<std::string>& largest_first);

  OrderKind kind() const { return kind_; }
  const std::vector<std::size_t>& precedence() const { return precedence_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// "lex" or "degrevlex".
  std::string kind_name() const;
  /// e.g. "degrevlex(x>y>e)".
  std::string describe(const Ring& ring) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_;
  std::vector<std::size_t> precedence_;
};

OrderKind parse_order_kind(std::string_view name);

/// Strict-weak comparator adaptor; sorts ascending under the order.
struct OrderLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->less(a, b); }
};

template <typename T>
T scalar_from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else {
    return T(r.to_double());
  }
}

/// Sparse multivariate polynomial over Q. Only nonzero coefficients are stored,
/// keyed by exponent vector; monomial orders are applied on access.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& ring, const Rational& c);
  static Polynomial variable(const Ring& ring, std::string_view name);
  static Polynomial variable(const Ring& ring, std::size_t index);
  static Polynomial term(const Ring& ring, const Monomial& m, const Rational& c);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Max total degree of a term; 0 for the zero polynomial.
  std::uint32_t total_degree() const;
  /// Max exponent of variable `index`.
  std::uint32_t degree_in(std::size_t index) const;
  Rational coefficient(const Monomial& m) const;

  /// Adds c*m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  /// (c*m) * p.
  Polynomial mul_term(const Monomial& m, const Rational& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// Value at `point` (one entry per ring variable).
  template <typename T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != ring_.size()) {
      throw RingError("evaluation point has wrong dimension");
    }
    T sum = scalar_from_rational<T>(Rational(0));
    for (const auto& [m, c] : terms_) {
      T term = scalar_from_rational<T>(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::uint32_t k = 0; k < m[i]; ++k) term = term * point[i];
      }
      sum = sum + term;
    }
    return sum;
  }

  /// Replaces variable `index` by the constant `value`; the ring is unchanged.
  Polynomial substitute(std::size_t index, const Rational& value) const;

  /// Re-expresses the polynomial in `target`, matching variables by name. Every
  /// variable with a nonzero exponent must exist in `target`.
  Polynomial remap(const Ring& target) const;

  /// Max |coefficient| as a double.
  double max_abs_coefficient() const;
  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const;

 private:
  void require_same_ring(const Polynomial& o) const;

  Ring ring_;
  TermMap terms_;
};

/// Exact partial derivative.
Polynomial differentiate(const Polynomial& p, std::size_t index);
Polynomial differentiate(const Polynomial& p, std::string_view variable);

/// Largest term under `order`. Throws std::invalid_argument on the zero polynomial.
std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order);
inline Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) {
  return leading_term(p, order).first;
}

/// Terms sorted descending under `order`.
std::vector<std::pair<Monomial, Rational>> sorted_terms(const Polynomial& p, const MonomialOrder& order);

/// Parses the polynomial grammar: integers, a/b rationals, identifiers, + - *,
/// ^ or ** with non-negative integer exponents, parentheses.
Polynomial parse(std::string_view text, const Ring& ring);

/// Printed with terms descending under `order`; the output re-parses to the same polynomial.
std::string to_string(const Polynomial& p, const MonomialOrder& order);
/// Printed under degrevlex in declaration order.
std::string to_string(const Polynomial& p);
std::string to_string(const Monomial& m, const Ring& ring);

}  // namespace hfroots
