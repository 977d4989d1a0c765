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

#include "hfroots/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hfroots {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw RingError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw RingError("duplicate variable name '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

Ring::Ring(std::initializer_list<const char*> names)
    : Ring(std::vector<std::string>(names.begin(), names.end())) {}

std::size_t Ring::index_of(std::string_view name) const {
  const auto& n = *names_;
  const auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) throw RingError("unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - n.begin());
}

bool Ring::contains(std::string_view name) const {
  return std::find(names_->begin(), names_->end(), name) != names_->end();
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  m.exponents_.at(index) = power;
  return m;
}

std::uint32_t Monomial::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), std::uint32_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](std::uint32_t e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

int Monomial::pure_power_variable() const {
  int found = -1;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    if (found >= 0) return -1;
    found = static_cast<int>(i);
  }
  return found;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.exponents_[i] += b.exponents_[i];
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (b.exponents_[i] > r.exponents_[i]) throw std::invalid_argument("monomial quotient is not exact");
    r.exponents_[i] -= b.exponents_[i];
  }
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.exponents_[i] = std::max(a.exponents_[i], b.exponents_[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.exponents_[i] != 0 && b.exponents_[i] != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
  std::vector<std::size_t> sorted = precedence_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw std::invalid_argument("monomial order precedence is not a permutation");
  }
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::size_t> p(nvars);
  std::iota(p.begin(), p.end(), 0);
  return {OrderKind::lex, std::move(p)};
}

MonomialOrder MonomialOrder::degrevlex(std::size_t nvars) {
  std::vector<std::size_t> p(nvars);
  std::iota(p.begin(), p.end(), 0);
  return {OrderKind::degrevlex, std::move(p)};
}

MonomialOrder MonomialOrder::named(OrderKind kind, const Ring& ring,
                                   const std::vector<std::string>& largest_first) {
  if (largest_first.size() != ring.size()) {
    throw RingError("order precedence must name every ring variable exactly once");
  }
  std::vector<std::size_t> p;
  p.reserve(largest_first.size());
  for (const auto& name : largest_first) p.push_back(ring.index_of(name));
  return {kind, std::move(p)};
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ == OrderKind::lex) {
    for (std::size_t v : precedence_) {
      if (a[v] != b[v]) return a[v] <=> b[v];
    }
    return std::strong_ordering::equal;
  }
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da <=> db;
  // Smaller exponent in the smallest variable wins.
  for (auto it = precedence_.rbegin(); it != precedence_.rend(); ++it) {
    const std::size_t v = *it;
    if (a[v] != b[v]) return b[v] <=> a[v];
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::kind_name() const { return kind_ == OrderKind::lex ? "lex" : "degrevlex"; }

std::string MonomialOrder::describe(const Ring& ring) const {
  std::string s = kind_name() + "(";
  for (std::size_t i = 0; i < precedence_.size(); ++i) {
    if (i > 0) s += ">";
    s += ring.name(precedence_[i]);
  }
  return s + ")";
}

OrderKind parse_order_kind(std::string_view name) {
  if (name == "lex") return OrderKind::lex;
  if (name == "degrevlex" || name == "grevlex" || name == "dp") return OrderKind::degrevlex;
  throw std::invalid_argument("unknown monomial order '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(const Ring& ring, const Rational& c) {
  Polynomial p(ring);
  p.add_term(Monomial(ring.size()), c);
  return p;
}

Polynomial Polynomial::variable(const Ring& ring, std::string_view name) {
  return variable(ring, ring.index_of(name));
}

Polynomial Polynomial::variable(const Ring& ring, std::size_t index) {
  if (index >= ring.size()) throw RingError("variable index out of range");
  return term(ring, Monomial::variable(ring.size(), index), Rational(1));
}

Polynomial Polynomial::term(const Ring& ring, const Monomial& m, const Rational& c) {
  if (m.size() != ring.size()) throw RingError("monomial length does not match ring");
  Polynomial p(ring);
  p.add_term(m, c);
  return p;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t index) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[index]);
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same_ring(const Polynomial& o) const {
  if (!(ring_ == o.ring_)) throw RingError("polynomials belong to different rings");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  Polynomial r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
  return r;
}

Polynomial Polynomial::substitute(std::size_t index, const Rational& value) const {
  if (index >= ring_.size()) throw RingError("variable index out of range");
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    Monomial reduced = m;
    reduced[index] = 0;
    Rational factor(1);
    for (std::uint32_t k = 0; k < m[index]; ++k) factor *= value;
    r.add_term(reduced, c * factor);
  }
  return r;
}

Polynomial Polynomial::remap(const Ring& target) const {
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Monomial mapped(target.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      mapped[target.index_of(ring_.name(i))] = m[i];
    }
    r.add_term(mapped, c);
  }
  return r;
}

double Polynomial::max_abs_coefficient() const {
  double best = 0.0;
  for (const auto& [m, c] : terms_) best = std::max(best, std::fabs(c.to_double()));
  return best;
}

double Polynomial::coefficient_norm() const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    const double v = c.to_double();
    sum += v * v;
  }
  return std::sqrt(sum);
}

Polynomial differentiate(const Polynomial& p, std::size_t index) {
  if (index >= p.ring().size()) throw RingError("variable index out of range");
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[index] == 0) continue;
    Monomial d = m;
    d[index] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(m[index])));
  }
  return r;
}

Polynomial differentiate(const Polynomial& p, std::string_view variable) {
  return differentiate(p, p.ring().index_of(variable));
}

std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading term of the zero polynomial");
  auto best = p.terms().begin();
  for (auto it = std::next(best); it != p.terms().end(); ++it) {
    if (order.less(best->first, it->first)) best = it;
  }
  return {best->first, best->second};
}

std::vector<std::pair<Monomial, Rational>> sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  std::vector<std::pair<Monomial, Rational>> out(p.terms().begin(), p.terms().end());
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return order.less(b.first, a.first); });
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char ch) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  bool peek_power() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    if (text_[pos_] == '^') return true;
    return text_[pos_] == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*';
  }

  Polynomial expr() {
    Polynomial acc = product();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += product();
      } else if (peek('-')) {
        ++pos_;
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    while (peek('*') && !peek_power()) {
      ++pos_;
      acc *= unary();
    }
    return acc;
  }

  Polynomial unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!peek_power()) return base;
    pos_ += text_[pos_] == '^' ? 1 : 2;
    skip_ws();
    const std::size_t start = pos_;
    const std::string digits = read_digits();
    if (digits.empty()) throw ParseError("expected non-negative integer exponent", start);
    if (digits.size() > 4) throw ParseError("exponent too large", start);
    const int e = std::stoi(digits);
    Polynomial result = Polynomial::constant(ring_, Rational(1));
    for (int k = 0; k < e; ++k) result *= base;
    if (peek_power()) throw ParseError("chained exponents are ambiguous; use parentheses", pos_);
    return result;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::string num = read_digits();
      std::string den = "1";
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t den_pos = pos_;
        den = read_digits();
        if (den.empty()) throw ParseError("expected denominator", den_pos);
        if (mpz_class(den, 10) == 0) throw ParseError("zero denominator", den_pos);
      }
      if (pos_ < text_.size() &&
          (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '_')) {
        throw ParseError("implicit multiplication or decimal literal is not allowed", pos_);
      }
      return Polynomial::constant(ring_, Rational(mpz_class(num, 10), mpz_class(den, 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (!ring_.contains(name)) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, name);
    }
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, const Ring& ring) { return Parser(text, ring).run(); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted_terms(p, order)) {
    const bool negative = c.sign() < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << mag;
    } else if (mag.is_one()) {
      os << to_string(m, p.ring());
    } else {
      os << mag << "*" << to_string(m, p.ring());
    }
  }
  return os.str();
}

std::string to_string(const Polynomial& p) { return to_string(p, MonomialOrder::degrevlex(p.ring().size())); }

}  // namespace hfroots
