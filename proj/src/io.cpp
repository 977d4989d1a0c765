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

#include "hfroots/io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "hfroots/errors.hpp"

namespace hfroots {

namespace {

void expect_schema(const json& j, std::string_view schema) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != schema) {
    throw ParseError("expected JSON schema '" + std::string(schema) + "'", 0);
  }
}

Ring ring_from_json(const json& j) {
  if (!j.contains("variables") || !j.at("variables").is_array()) throw ParseError("missing 'variables' array", 0);
  return Ring(j.at("variables").get<std::vector<std::string>>());
}

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json window_to_json(const SpectralWindow& w) { return json{{"center", w.center}, {"radius", w.radius}}; }

json peak_to_json(const PhasePeak& p) {
  return json{{"index", p.index},         {"bits", p.bits},   {"phase", p.phase},
              {"eigenvalue", p.eigenvalue}, {"mass", p.mass}, {"sharpness", p.sharpness},
              {"sharp", p.sharp}};
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::from_string(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string", 0);
}

std::vector<std::string> split_generators(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  bool comment = false;
  for (char ch : text) {
    if (ch == '\n') {
      comment = false;
    } else if (comment) {
      continue;
    } else if (ch == '#') {
      comment = true;
      continue;
    }
    if (ch == '\n' || ch == ';') {
      if (current.find_first_not_of(" \t\r") != std::string::npos) out.push_back(current);
      current.clear();
      continue;
    }
    current.push_back(ch);
  }
  if (current.find_first_not_of(" \t\r") != std::string::npos) out.push_back(current);
  return out;
}

}  // namespace

json order_to_json(const MonomialOrder& order, const Ring& ring) {
  json prec = json::array();
  for (std::size_t i : order.precedence()) prec.push_back(ring.name(i));
  return json{{"kind", order.kind_name()}, {"precedence", prec}};
}

MonomialOrder order_from_json(const json& j, const Ring& ring) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("order needs a 'kind'", 0);
  const OrderKind kind = parse_order_kind(j.at("kind").get<std::string>());
  std::vector<std::string> names = ring.names();
  if (j.contains("precedence")) names = j.at("precedence").get<std::vector<std::string>>();
  return MonomialOrder::named(kind, ring, names);
}

json ideal_to_json(const Ideal& ideal) {
  json gens = json::array();
  for (const auto& g : ideal.generators()) gens.push_back(to_string(g, ideal.order()));
  return json{{"schema", kIdealSchema},
              {"variables", ideal.ring().names()},
              {"order", order_to_json(ideal.order(), ideal.ring())},
              {"generators", gens}};
}

Ideal ideal_from_json(const json& j) {
  expect_schema(j, kIdealSchema);
  const Ring ring = ring_from_json(j);
  std::vector<Polynomial> gens;
  for (const auto& g : j.at("generators")) gens.push_back(parse(g.get<std::string>(), ring));
  const MonomialOrder order =
      j.contains("order") ? order_from_json(j.at("order"), ring) : MonomialOrder::degrevlex(ring.size());
  return Ideal(std::move(gens), order);
}

json groebner_to_json(const GroebnerBasis& g, const QuotientBasis* quotient) {
  json basis = json::array();
  json leading = json::array();
  for (const auto& p : g.elements()) {
    basis.push_back(to_string(p, g.order()));
    leading.push_back(to_string(leading_monomial(p, g.order()), g.ring()));
  }
  json out{{"schema", kGroebnerSchema},
           {"variables", g.ring().names()},
           {"order", order_to_json(g.order(), g.ring())},
           {"reduced", g.reduced()},
           {"basis", basis},
           {"leading_monomials", leading}};
  if (quotient != nullptr) {
    out["quotient"] = json{{"zero_dimensional", true}, {"dimension", quotient->size()}, {"monomials", quotient->labels()}};
  }
  return out;
}

GroebnerBasis groebner_from_json(const json& j) {
  expect_schema(j, kGroebnerSchema);
  const Ring ring = ring_from_json(j);
  const MonomialOrder order = order_from_json(j.at("order"), ring);
  std::vector<Polynomial> elements;
  for (const auto& p : j.at("basis")) elements.push_back(parse(p.get<std::string>(), ring));
  if (elements.empty()) throw ParseError("empty Groebner basis", 0);
  if (!satisfies_buchberger_criterion(elements, order)) {
    throw ParseError("basis in file is not a Groebner basis for its order", 0);
  }
  const bool reduced = j.value("reduced", false);
  return GroebnerBasis(std::move(elements), order, reduced);
}

json matrices_to_json(const MultMatrixSet& set) {
  json mats = json::object();
  for (std::size_t v = 0; v < set.ring().size(); ++v) {
    const RationalMatrix& m = set[v];
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
      rows.push_back(row);
    }
    mats[set.ring().name(v)] = rows;
  }
  return json{{"schema", kMatricesSchema},
              {"variables", set.ring().names()},
              {"basis", set.basis().labels()},
              {"convention", "column j holds the coordinates of normal_form(b_j * x)"},
              {"matrices", mats}};
}

json roots_to_json(const RootSet& roots) {
  json list = json::array();
  double max_residual = 0.0;
  for (const Root& r : roots.roots) {
    json point = json::array();
    for (Eigen::Index i = 0; i < r.point.size(); ++i) point.push_back(complex_to_json(r.point(i)));
    const double worst = r.residuals.empty() ? 0.0 : *std::max_element(r.residuals.begin(), r.residuals.end());
    list.push_back(json{{"kind", r.kind == RootKind::real ? "real" : "complex"},
                        {"point", point},
                        {"residuals", r.residuals},
                        {"max_residual", worst}});
    max_residual = std::max(max_residual, worst);
  }
  return json{{"schema", kRootsSchema},
              {"variables", roots.variables},
              {"count", roots.roots.size()},
              {"real_count", roots.real_count()},
              {"discarded", roots.discarded},
              {"max_residual", max_residual},
              {"roots", list}};
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) {
    gates.push_back(json{{"gate", g.name}, {"targets", g.targets}, {"controls", g.controls}, {"angle", g.angle}});
  }
  return json{{"schema", kCircuitSchema}, {"num_qubits", c.num_qubits}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
  expect_schema(j, kCircuitSchema);
  Circuit c;
  c.num_qubits = j.at("num_qubits").get<int>();
  for (const auto& g : j.at("gates")) {
    c.gates.push_back(Gate{g.at("gate").get<std::string>(), g.at("targets").get<std::vector<int>>(),
                           g.value("controls", std::vector<int>{}), g.value("angle", 0.0)});
  }
  return c;
}

json fable_to_json(const FableCircuit& f) {
  json out = circuit_to_json(f.circuit);
  out["signal_qubits"] = f.signal_qubits;
  out["alpha"] = f.alpha;
  out["counts"] = json{{"rotations_before", f.rotations_before},
                       {"rotations_after", f.rotations_after},
                       {"cnots_before", f.cnots_before},
                       {"cnots_after", f.cnots_after}};
  return out;
}

json qpe_to_json(const QpeResult& r) {
  json outcomes = json::array();
  for (std::size_t k = 0; k < r.distribution.size(); ++k) {
    if (r.distribution[k] < 1e-9) continue;
    outcomes.push_back(json{{"index", k},
                            {"bits", phase_bits(k, r.bits)},
                            {"probability", r.distribution[k]},
                            {"phase", static_cast<double>(k) / static_cast<double>(r.distribution.size())},
                            {"eigenvalue", decode_eigenvalue(k, r.bits, r.window)}});
  }
  json peaks = json::array();
  for (const auto& p : r.peaks) peaks.push_back(peak_to_json(p));
  json out{{"schema", kQpeSchema},
           {"bits", r.bits},
           {"engine", engine_name(r.engine)},
           {"window", window_to_json(r.window)},
           {"modal", peak_to_json(r.modal)},
           {"peaks", peaks},
           {"sharp_mass", r.sharp_mass},
           {"flatness", r.flatness},
           {"complex_flag", r.complex_flag},
           {"verdict", r.complex_flag ? "complex-discard" : "real"},
           {"outcomes", outcomes}};
  if (r.log10_success) out["log10_success"] = *r.log10_success;
  return out;
}

json multi_qpe_to_json(const MultiQpeResult& r, const std::vector<std::string>& variables) {
  auto outcome = [&](const JointOutcome& o) {
    json bits = json::object();
    json values = json::object();
    for (std::size_t i = 0; i < o.indices.size() && i < variables.size(); ++i) {
      bits[variables[i]] = o.bits[i];
      values[variables[i]] = o.eigenvalues[i];
    }
    return json{{"bits", bits}, {"eigenvalues", values}, {"mass", o.mass}, {"sharpness", o.sharpness}};
  };
  json roots = json::array();
  for (const auto& o : r.roots) roots.push_back(outcome(o));
  json discarded = json::array();
  for (const auto& o : r.discarded) discarded.push_back(outcome(o));
  json windows = json::object();
  json flags = json::object();
  for (std::size_t i = 0; i < variables.size() && i < r.windows.size(); ++i) {
    windows[variables[i]] = window_to_json(r.windows[i]);
    if (i < r.register_flags.size()) flags[variables[i]] = r.register_flags[i] ? "complex-discard" : "real";
  }
  return json{{"schema", kMultiQpeSchema},
              {"bits", r.bits},
              {"engine", engine_name(r.engine)},
              {"variables", variables},
              {"windows", windows},
              {"registers", flags},
              {"roots", roots},
              {"discarded", discarded},
              {"pruned_mass", r.pruned_mass},
              {"diffuse_mass", r.diffuse_mass},
              {"leaves", r.leaves}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const json* rows = &j;
  if (j.is_object()) {
    expect_schema(j, kMatrixSchema);
    rows = &j.at("rows");
  }
  if (!rows->is_array() || rows->empty()) throw ParseError("matrix must be a non-empty array of rows", 0);
  const auto n = static_cast<Eigen::Index>(rows->size());
  const auto m = static_cast<Eigen::Index>(rows->front().size());
  Eigen::MatrixXcd out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = (*rows)[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) throw ParseError("ragged matrix rows", 0);
    for (Eigen::Index k = 0; k < m; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        out(i, k) = e.get<double>();
      } else if (e.is_string()) {
        out(i, k) = Rational::from_string(e.get<std::string>()).to_double();
      } else if (e.is_array() && e.size() == 2) {
        out(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError("unsupported matrix entry", 0);
      }
    }
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (m(i, k).imag() == 0.0) {
        row.push_back(m(i, k).real());
      } else {
        row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
      }
    }
    rows.push_back(row);
  }
  return json{{"schema", kMatrixSchema}, {"rows", rows}};
}

QuboSpec qubo_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num_vars")) throw ParseError("QUBO needs 'num_vars'", 0);
  const auto n = j.at("num_vars").get<std::size_t>();
  if (j.contains("uniform")) {
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("uniform")) coeffs.push_back(rational_from_json(c));
    return QuboSpec::uniform(n, coeffs);
  }
  QuboSpec spec;
  spec.num_vars = n;
  for (const auto& t : j.at("terms")) {
    QuboTerm term;
    std::set<std::size_t> seen;
    for (const auto& i : t.at("indices")) {
      const auto idx = i.get<std::size_t>();
      if (idx < 1 || idx > n) throw ParseError("QUBO index out of range", 0);
      if (seen.insert(idx - 1).second) term.indices.push_back(idx - 1);
    }
    term.coefficient = rational_from_json(t.at("coefficient"));
    spec.terms.push_back(std::move(term));
  }
  return spec;
}

std::vector<std::string> infer_variables(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  bool comment = false;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') comment = false;
    if (ch == '#') comment = true;
    if (!comment && std::isalpha(static_cast<unsigned char>(ch)) != 0) {
      std::size_t k = i;
      while (k < text.size() && (std::isalnum(static_cast<unsigned char>(text[k])) != 0 || text[k] == '_')) ++k;
      std::string name(text.substr(i, k - i));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
      i = k;
      continue;
    }
    if (!comment && std::isdigit(static_cast<unsigned char>(ch)) != 0) {
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i])) != 0) ++i;
      continue;
    }
    ++i;
  }
  return out;
}

IdealInput read_ideal(std::string_view text, const IdealReadOptions& opts) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw std::invalid_argument("ideal input is empty");
  IdealInput out;
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    const std::string schema = j.value("schema", "");
    if (schema == kGroebnerSchema) {
      GroebnerBasis g = groebner_from_json(j);
      if (opts.order || opts.variables) {
        const MonomialOrder order = MonomialOrder::named(opts.order.value_or(g.order().kind()), g.ring(),
                                                         opts.variables.value_or(g.ring().names()));
        out.ideal = Ideal(g.elements(), order);
      } else {
        out.basis = std::move(g);
      }
      return out;
    }
    Ideal ideal = ideal_from_json(j);
    if (opts.order || opts.variables) {
      const MonomialOrder order = MonomialOrder::named(opts.order.value_or(ideal.order().kind()), ideal.ring(),
                                                       opts.variables.value_or(ideal.ring().names()));
      ideal = Ideal(ideal.generators(), order);
    }
    out.ideal = std::move(ideal);
    return out;
  }

  const std::vector<std::string> names = opts.variables.value_or(infer_variables(text));
  if (names.empty()) throw std::invalid_argument("ideal has no variables");
  const Ring ring(names);
  std::vector<Polynomial> gens;
  for (const auto& g : split_generators(text)) gens.push_back(parse(g, ring));
  std::erase_if(gens, [](const Polynomial& p) { return p.is_zero(); });
  if (gens.empty()) throw std::invalid_argument("ideal has no nonzero generators");
  out.ideal = Ideal(std::move(gens), MonomialOrder::named(opts.order.value_or(OrderKind::degrevlex), ring, names));
  return out;
}

}  // namespace hfroots
