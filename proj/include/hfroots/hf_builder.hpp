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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hfroots/groebner.hpp"

namespace hfroots {

/// Ring (x, y, e) of the two-site secular model.
Ring toy_ring();

/// Two-site secular problem [[V, -1], [-1, V]] (x, y)^T = e (x, y)^T with x^2 + y^2 = 1.
struct ToyModelSpec {
  /// On-site potential in (x, y); zero when unset.
  std::optional<Polynomial> potential;
};

/// (x V - y - e x, y V - x - e y, x^2 + y^2 - 1) in Q[x, y, e], lex x > y > e.
Ideal build_toy_ideal(const ToyModelSpec& spec = {});

/// Ring (R, x, y, e) of the HeH+ objective.
Ring objective_ring();

/// Reads a fixture holding one polynomial. An optional "NAME=" prefix and a
/// trailing ';' are accepted, as are '**' exponents.
Polynomial load_objective(const std::filesystem::path& path, const Ring& ring = objective_ring());
Polynomial parse_objective(std::string_view text, const Ring& ring = objective_ring());

struct ObjectiveSpec {
  /// Polynomial in (R, x, y, e).
  Polynomial objective;
  /// When set, R is replaced by this value and the ideal lives in Q[x, y, e].
  std::optional<Rational> fixed_R;
  /// Replaces dF/dR; defaults to 100 R - 146.
  std::optional<Polynomial> R_constraint;
};

/// Stationarity system of the objective: (dF/dx, dF/dy, dF/de, R-constraint).
/// With fixed_R the constraint is consumed by substitution, leaving three
/// generators in Q[x, y, e]. Ordering: degrevlex with x > y > e (R largest when kept).
Ideal build_hf_ideal(const ObjectiveSpec& spec);

/// One monomial of a QUBO energy: coefficient * prod x_{i+1} over distinct 0-based indices.
struct QuboTerm {
  std::vector<std::size_t> indices;
  Rational coefficient;
};

struct QuboSpec {
  std::size_t num_vars = 0;
  std::vector<QuboTerm> terms;

  /// Builds terms from per-order uniform coefficients C_1, C_2, ...:
  /// C_k multiplies the sum over all k-subsets of the variables.
  static QuboSpec uniform(std::size_t num_vars, const std::vector<Rational>& order_coefficients);

  /// Energy of a binary assignment (bit i of `assignment` is x_{i+1}).
  Rational energy(std::uint64_t assignment) const;
};

/// Ring (x1, ..., xn, e).
Ring qubo_ring(std::size_t num_vars);

/// (H(x) - e, x_i^2 - x_i for each i), degrevlex in ring order.
Ideal build_qubo_ideal(const QuboSpec& spec);

}  // namespace hfroots
