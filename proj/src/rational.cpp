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

#include "hfroots/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "hfroots/errors.hpp"

namespace hfroots {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

// N/10^n with N = round(10^n * value), ties away from zero.
Rational round_to_decimal(const mpq_class& value, unsigned n) {
  const Rational scale_r = power_of_ten(n);
  const mpq_class& scale = scale_r.raw();
  mpq_class scaled = value * scale;
  const bool negative = sgn(scaled) < 0;
  if (negative) scaled = -scaled;
  scaled += mpq_class(1, 2);
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (negative) rounded = -rounded;
  return Rational(rounded, scale.get_num());
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational Rational::from_string(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  }
  mpz_class n(std::string(num), 10);
  const mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  if (negative) n = -n;
  return Rational(n, d);
}

Rational power_of_ten(unsigned exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, exponent);
  return Rational(p, mpz_class(1));
}

Rational rationalize(double c, unsigned n) {
  if (!std::isfinite(c)) throw std::domain_error("rationalize: non-finite input");
  return round_to_decimal(mpq_class(c), n);
}

Rational rationalize(std::string_view decimal, unsigned n) {
  std::string_view s = decimal;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_text = s.substr(epos + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text)) throw ParseError("malformed decimal '" + std::string(decimal) + "'", epos);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, epos);
  }
  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = s.substr(0, dot);
    const std::string_view fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
      throw ParseError("malformed decimal '" + std::string(decimal) + "'", 0);
    }
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed decimal '" + std::string(decimal) + "'", 0);
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  mpq_class value{mpz_class(digits, 10)};
  const Rational ten_pow_r = power_of_ten(static_cast<unsigned>(std::labs(exponent)));
  const mpq_class& ten_pow = ten_pow_r.raw();
  if (exponent >= 0) {
    value *= ten_pow;
  } else {
    value /= ten_pow;
  }
  if (negative) value = -value;
  return round_to_decimal(value, n);
}

}  // namespace hfroots
