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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hfroots/circuit.hpp"
#include "hfroots/groebner.hpp"
#include "hfroots/hf_builder.hpp"
#include "hfroots/qpe.hpp"
#include "hfroots/quotient.hpp"
#include "hfroots/rootfind.hpp"

namespace hfroots {

using json = nlohmann::json;

inline constexpr std::string_view kIdealSchema = "hfroots/ideal/1";
inline constexpr std::string_view kGroebnerSchema = "hfroots/groebner-basis/1";
inline constexpr std::string_view kMatricesSchema = "hfroots/mult-matrices/1";
inline constexpr std::string_view kRootsSchema = "hfroots/roots/1";
inline constexpr std::string_view kCircuitSchema = "hfroots/circuit/1";
inline constexpr std::string_view kQpeSchema = "hfroots/qpe/1";
inline constexpr std::string_view kMultiQpeSchema = "hfroots/multi-qpe/1";
inline constexpr std::string_view kMatrixSchema = "hfroots/matrix/1";
inline constexpr std::string_view kQuboSchema = "hfroots/qubo/1";

json order_to_json(const MonomialOrder& order, const Ring& ring);
MonomialOrder order_from_json(const json& j, const Ring& ring);

json ideal_to_json(const Ideal& ideal);
Ideal ideal_from_json(const json& j);

/// Adds the quotient description when `quotient` is given.
json groebner_to_json(const GroebnerBasis& g, const QuotientBasis* quotient = nullptr);
GroebnerBasis groebner_from_json(const json& j);

/// Entries are exact "p/q" strings; column j holds the coordinates of b_j * x_v.
json matrices_to_json(const MultMatrixSet& set);

json roots_to_json(const RootSet& roots);

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);
json fable_to_json(const FableCircuit& f);

json qpe_to_json(const QpeResult& r);
json multi_qpe_to_json(const MultiQpeResult& r, const std::vector<std::string>& variables);

/// Matrix from JSON: either a bare array of rows or {"schema", "rows"}. Entries
/// may be numbers, "p/q" strings or [re, im] pairs.
Eigen::MatrixXcd matrix_from_json(const json& j);
json matrix_to_json(const Eigen::MatrixXcd& m);

/// QUBO specification {"num_vars", "terms": [{"indices", "coefficient"}]} with
/// 1-based indices and exact coefficients, or {"num_vars", "uniform": [C1, C2, ...]}.
QuboSpec qubo_from_json(const json& j);

/// Parsed contents of an ideal file.
struct IdealInput {
  std::optional<Ideal> ideal;
  std::optional<GroebnerBasis> basis;
};

struct IdealReadOptions {
  /// Variable names, largest first; inferred from first appearance when unset.
  std::optional<std::vector<std::string>> variables;
  /// Overrides the order stored in (or defaulted for) the file.
  std::optional<OrderKind> order;
};

/// Accepts ideal JSON, Groebner-basis JSON, or plain text with one generator
/// per line or ';'-separated ('#' starts a comment). Plain text defaults to
/// degrevlex. Throws std::invalid_argument on empty input, ParseError on
/// malformed input.
IdealInput read_ideal(std::string_view text, const IdealReadOptions& opts = {});

/// Identifiers in order of first appearance.
std::vector<std::string> infer_variables(std::string_view text);

}  // namespace hfroots
