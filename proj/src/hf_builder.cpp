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

#include "hfroots/hf_builder.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hfroots/errors.hpp"

namespace hfroots {

Ring toy_ring() { return Ring{"x", "y", "e"}; }

Ideal build_toy_ideal(const ToyModelSpec& spec) {
  const Ring ring = toy_ring();
  Polynomial v(ring);
  if (spec.potential) {
    const Polynomial& pot = *spec.potential;
    for (const auto& [m, c] : pot.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] != 0 && pot.ring().name(i) != "x" && pot.ring().name(i) != "y") {
          throw RingError("toy potential may only depend on x and y");
        }
      }
    }
    v = pot.remap(ring);
  }
  const Polynomial x = Polynomial::variable(ring, "x");
  const Polynomial y = Polynomial::variable(ring, "y");
  const Polynomial e = Polynomial::variable(ring, "e");
  const Polynomial one = Polynomial::constant(ring, Rational(1));
  return Ideal({x * v - y - e * x, y * v - x - e * y, x * x + y * y - one}, MonomialOrder::lex(3));
}

Ring objective_ring() { return Ring{"R", "x", "y", "e"}; }

Polynomial parse_objective(std::string_view text, const Ring& ring) {
  std::string_view body = text;
  std::size_t offset = 0;
  if (const auto eq = body.find('='); eq != std::string_view::npos) {
    offset = eq + 1;
    body = body.substr(offset);
  }
  if (const auto semi = body.find(';'); semi != std::string_view::npos) {
    const auto rest = body.substr(semi + 1);
    if (rest.find_first_not_of(" \t\r\n") != std::string_view::npos) {
      throw ParseError("unexpected text after ';'", offset + semi + 1);
    }
    body = body.substr(0, semi);
  }
  try {
    return parse(body, ring);
  } catch (const ParseError& e) {
    throw ParseError(std::string("objective: ") + e.what(), offset + e.position());
  }
}

Polynomial load_objective(const std::filesystem::path& path, const Ring& ring) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open objective fixture '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_objective(ss.str(), ring);
}

Ideal build_hf_ideal(const ObjectiveSpec& spec) {
  const Ring& ring = spec.objective.ring();
  for (const char* name : {"R", "x", "y", "e"}) {
    if (!ring.contains(name)) throw RingError(std::string("objective ring lacks variable '") + name + "'");
  }
  if (ring.size() != 4) throw RingError("objective ring must be exactly (R, x, y, e)");
  const std::size_t r_index = ring.index_of("R");

  Polynomial constraint = spec.R_constraint.value_or(
      Polynomial::variable(ring, "R") * Rational(100) - Polynomial::constant(ring, Rational(146)));
  if (!(constraint.ring() == ring)) constraint = constraint.remap(ring);

  std::vector<Polynomial> derivatives;
  for (const char* v : {"x", "y", "e"}) derivatives.push_back(differentiate(spec.objective, v));

  if (!spec.fixed_R) {
    derivatives.push_back(constraint);
    return Ideal(std::move(derivatives), MonomialOrder::named(OrderKind::degrevlex, ring, {"R", "x", "y", "e"}));
  }

  if (constraint.degree_in(r_index) != 1) throw std::invalid_argument("R constraint must be linear in R");
  if (!constraint.substitute(r_index, *spec.fixed_R).is_zero()) {
    throw std::invalid_argument("fixed R value does not satisfy the R constraint");
  }
  const Ring reduced{"x", "y", "e"};
  std::vector<Polynomial> gens;
  for (const auto& d : derivatives) gens.push_back(d.substitute(r_index, *spec.fixed_R).remap(reduced));
  std::erase_if(gens, [](const Polynomial& p) { return p.is_zero(); });
  return Ideal(std::move(gens), MonomialOrder::degrevlex(3));
}

QuboSpec QuboSpec::uniform(std::size_t num_vars, const std::vector<Rational>& order_coefficients) {
  QuboSpec spec;
  spec.num_vars = num_vars;
  for (std::size_t k = 1; k <= order_coefficients.size() && k <= num_vars; ++k) {
    const Rational& c = order_coefficients[k - 1];
    if (c.is_zero()) continue;
    std::vector<bool> mask(num_vars, false);
    std::fill(mask.end() - static_cast<long>(k), mask.end(), true);
    do {
      QuboTerm t;
      for (std::size_t i = 0; i < num_vars; ++i) {
        if (mask[i]) t.indices.push_back(i);
      }
      t.coefficient = c;
      spec.terms.push_back(std::move(t));
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return spec;
}

Rational QuboSpec::energy(std::uint64_t assignment) const {
  Rational e(0);
  for (const auto& t : terms) {
    const bool active = std::all_of(t.indices.begin(), t.indices.end(),
                                    [&](std::size_t i) { return ((assignment >> i) & 1U) != 0; });
    if (active) e += t.coefficient;
  }
  return e;
}

Ring qubo_ring(std::size_t num_vars) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= num_vars; ++i) names.push_back("x" + std::to_string(i));
  names.emplace_back("e");
  return Ring(std::move(names));
}

Ideal build_qubo_ideal(const QuboSpec& spec) {
  if (spec.num_vars == 0) throw std::invalid_argument("QUBO needs at least one variable");
  const Ring ring = qubo_ring(spec.num_vars);
  Polynomial energy(ring);
  for (const auto& t : spec.terms) {
    Monomial m(ring.size());
    for (std::size_t i : t.indices) {
      if (i >= spec.num_vars) throw std::invalid_argument("QUBO term index out of range");
      m[i] = 1;  // x_i^2 = x_i on binary points
    }
    energy.add_term(m, t.coefficient);
  }
  std::vector<Polynomial> gens;
  gens.push_back(energy - Polynomial::variable(ring, "e"));
  for (std::size_t i = 0; i < spec.num_vars; ++i) {
    const Polynomial xi = Polynomial::variable(ring, i);
    gens.push_back(xi * xi - xi);
  }
  return Ideal(std::move(gens), MonomialOrder::degrevlex(ring.size()));
}

}  // namespace hfroots
