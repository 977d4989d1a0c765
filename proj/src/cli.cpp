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

#include "hfroots/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hfroots/errors.hpp"
#include "hfroots/hf_builder.hpp"
#include "hfroots/inverse_power.hpp"
#include "hfroots/io.hpp"
#include "hfroots/qpe.hpp"
#include "hfroots/rootfind.hpp"

namespace hfroots {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& in;
  std::ostream& out;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::stringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "'");
  ss << f.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& out_path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw UsageError("cannot write '" + out_path + "'");
  f << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + s + "'", 0);
  }
  if (used != s.size()) throw ParseError("expected a number, got '" + s + "'", used);
  return v;
}

// "a" or "a:b" for a + b i.
cplx parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return parse_double(s);
  return {parse_double(s.substr(0, colon)), parse_double(s.substr(colon + 1))};
}

struct IdealArgs {
  std::string vars;
  std::string order;

  IdealReadOptions options() const {
    IdealReadOptions o;
    if (!vars.empty()) o.variables = split_list(vars);
    if (!order.empty()) o.order = parse_order_kind(order);
    return o;
  }
};

GroebnerBasis basis_of(const IdealInput& input) {
  if (input.basis) return *input.basis;
  return buchberger(*input.ideal);
}

// Mixing weights in [0.2, 1] with random sign, so no component vanishes.
std::vector<double> mixing_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> w(n);
  for (auto& x : w) x = sign(rng) ? mag(rng) : -mag(rng);
  return w;
}

Eigen::VectorXcd random_state(Eigen::Index n, std::mt19937_64& rng, bool complex_entries) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = complex_entries ? g(rng) : 0.0;
    v(i) = cplx(re, im);
  }
  return v.normalized();
}

std::optional<SpectralWindow> parse_window(const std::string& spec, const Eigen::MatrixXcd& m) {
  if (spec.empty() || spec == "none") return SpectralWindow{};
  if (spec == "auto") return default_window(m);
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("window must be 'auto', 'none' or 'center:radius'", 0);
  return SpectralWindow{parse_double(spec.substr(0, colon)), parse_double(spec.substr(colon + 1))};
}

QpeEngine parse_engine(const std::string& s) {
  if (s == "auto" || s.empty()) return QpeEngine::automatic;
  if (s == "dense") return QpeEngine::dense;
  if (s == "spectral") return QpeEngine::spectral;
  throw UsageError("unknown engine '" + s + "'");
}

struct QpeArgs {
  std::string input;
  int bits = 8;
  std::uint64_t seed = 1;
  std::string init;
  std::string var;
  std::string eigenvalue;
  std::string shifts;
  std::string state;
  std::string window;
  std::string engine;
  int iterations = 50;
  double branch_prune = 1e-6;
  IdealArgs ideal;
  std::string out;
};

json run_qpe_matrix(const QpeArgs& a, const Eigen::MatrixXcd& m, std::mt19937_64& rng) {
  if (m.rows() != m.cols()) throw ParseError("QPE matrix must be square", 0);
  Eigen::VectorXcd psi;
  json init;
  const std::string mode = a.init.empty() ? (a.state.empty() ? "random" : "state") : a.init;
  if (mode == "state") {
    const auto parts = split_list(a.state);
    if (static_cast<Eigen::Index>(parts.size()) != m.rows()) throw UsageError("--state has the wrong length");
    psi.resize(m.rows());
    for (std::size_t i = 0; i < parts.size(); ++i) psi(static_cast<Eigen::Index>(i)) = parse_complex(parts[i]);
  } else if (mode == "random") {
    psi = random_state(m.rows(), rng, true);
  } else if (mode == "filtered") {
    if (a.shifts.empty()) throw UsageError("--init filtered needs --shifts");
    std::vector<cplx> shifts;
    for (const auto& s : split_list(a.shifts)) shifts.push_back(parse_complex(s));
    InversePowerOptions ip;
    ip.iterations = a.iterations;
    psi = Eigen::VectorXcd::Zero(m.rows());
    for (const auto& st : inverse_power_filter(m, shifts, random_state(m.rows(), rng, true), ip)) psi += st.state;
  } else {
    throw UsageError("--init must be state, random or filtered for a matrix input");
  }
  init["mode"] = mode;
  QpeOptions opts;
  opts.window = parse_window(a.window, m);
  opts.engine = parse_engine(a.engine);
  json j = qpe_to_json(qpe_simulate(m, psi, a.bits, opts));
  j["init"] = init;
  j["seed"] = a.seed;
  return j;
}

json run_qpe_ideal(const QpeArgs& a, const std::string& text, std::mt19937_64& rng) {
  const IdealInput input = read_ideal(text, a.ideal.options());
  const GroebnerBasis g = basis_of(input);
  const MultMatrixSet set(standard_monomials(g));
  std::vector<Eigen::MatrixXcd> ms;
  for (const auto& m : set.transposed_double()) ms.push_back(m.cast<cplx>());
  const std::vector<std::string>& vars = set.ring().names();
  const Eigen::Index dim = static_cast<Eigen::Index>(set.dimension());

  const std::string mode = a.init.empty() ? (a.var.empty() ? "real-eigvecs" : "eigenspace") : a.init;
  json init{{"mode", mode}};
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  if (mode == "eigenspace" || mode == "real-eigvecs") {
    const RootSet roots = solve_system(set);
    std::vector<const Root*> chosen;
    std::optional<std::size_t> vi;
    double target = 0.0;
    if (mode == "eigenspace") {
      if (a.var.empty() || a.eigenvalue.empty()) throw UsageError("--init eigenspace needs --var and --eigenvalue");
      vi = set.ring().index_of(a.var);
      target = parse_double(a.eigenvalue);
      init["var"] = a.var;
      init["eigenvalue"] = target;
    }
    // Snap the requested eigenvalue to the nearest exact one.
    if (vi) {
      double best = std::numeric_limits<double>::infinity();
      for (const Root& r : roots.roots) {
        if (r.kind != RootKind::real) continue;
        const double v = r.point(static_cast<Eigen::Index>(*vi)).real();
        if (std::abs(v - target) < std::abs(best - target)) best = v;
      }
      if (std::abs(best - target) > 1e-3 * (1.0 + std::abs(target))) {
        throw NumericError("no real root has " + a.var + " near " + a.eigenvalue);
      }
      target = best;
      init["eigenvalue"] = target;
    }
    for (const Root& r : roots.roots) {
      if (r.kind != RootKind::real) continue;
      if (vi && std::abs(r.point(static_cast<Eigen::Index>(*vi)).real() - target) > 1e-8 * (1.0 + std::abs(target))) {
        continue;
      }
      chosen.push_back(&r);
    }
    if (chosen.empty()) throw NumericError("no real root matches the requested eigenspace");
    const std::vector<double> w = mixing_weights(chosen.size(), rng);
    for (std::size_t i = 0; i < chosen.size(); ++i) psi += w[i] * chosen[i]->eigenvector;
    init["weights"] = w;
  } else if (mode == "random") {
    psi = random_state(dim, rng, true);
  } else if (mode == "filtered") {
    if (a.shifts.empty() || a.var.empty()) throw UsageError("--init filtered needs --var and --shifts");
    std::vector<cplx> shifts;
    for (const auto& s : split_list(a.shifts)) shifts.push_back(parse_complex(s));
    InversePowerOptions ip;
    ip.iterations = a.iterations;
    const auto& m = ms[set.ring().index_of(a.var)];
    for (const auto& st : inverse_power_filter(m, shifts, random_state(dim, rng, true), ip)) psi += st.state;
    init["var"] = a.var;
  } else {
    throw UsageError("--init must be eigenspace, real-eigvecs, random or filtered for an ideal input");
  }

  MultiQpeOptions opts;
  opts.engine = parse_engine(a.engine);
  opts.prune = a.branch_prune;
  if (!a.window.empty()) {
    for (const auto& m : ms) opts.windows.push_back(parse_window(a.window, m));
  }
  json j = multi_qpe_to_json(multi_qpe(ms, psi, a.bits, opts), vars);
  j["init"] = init;
  j["seed"] = a.seed;
  j["basis"] = set.basis().labels();
  return j;
}

json run_qubo(const std::string& text) {
  json spec_json;
  try {
    spec_json = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  const QuboSpec spec = qubo_from_json(spec_json);
  if (spec.num_vars > 16) throw ResourceLimitExceeded("QUBO pipeline limited to 16 variables");
  const Ideal ideal = build_qubo_ideal(spec);
  const MultMatrixSet set(standard_monomials(buchberger(ideal)));
  const RootSet roots = solve_system(set);

  json solutions = json::array();
  std::vector<std::uint64_t> found;
  for (const Root& r : roots.roots) {
    if (r.kind != RootKind::real) throw NumericError("QUBO ideal produced a complex root");
    std::uint64_t assignment = 0;
    json bits = json::array();
    for (std::size_t i = 0; i < spec.num_vars; ++i) {
      const double x = r.point(static_cast<Eigen::Index>(i)).real();
      const long b = std::lround(x);
      if ((b != 0 && b != 1) || std::abs(x - static_cast<double>(b)) > 1e-6) {
        throw NumericError("QUBO root is not binary");
      }
      bits.push_back(b);
      if (b == 1) assignment |= std::uint64_t{1} << i;
    }
    const Rational energy = spec.energy(assignment);
    const double e = r.point(static_cast<Eigen::Index>(spec.num_vars)).real();
    if (std::abs(e - energy.to_double()) > 1e-6 * (1.0 + std::abs(energy.to_double()))) {
      throw NumericError("QUBO root energy disagrees with the exact energy");
    }
    found.push_back(assignment);
    solutions.push_back(json{{"assignment", bits}, {"energy", energy.to_string()}, {"energy_value", energy.to_double()}});
  }
  std::vector<std::uint64_t> all(std::uint64_t{1} << spec.num_vars);
  for (std::uint64_t k = 0; k < all.size(); ++k) all[k] = k;
  std::sort(found.begin(), found.end());
  Rational ground = spec.energy(0);
  for (std::uint64_t k : all) ground = std::min(ground, spec.energy(k));
  std::vector<json> sorted(solutions.begin(), solutions.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const json& x, const json& y) {
    const Rational a = Rational::from_string(x.at("energy").get<std::string>());
    const Rational b = Rational::from_string(y.at("energy").get<std::string>());
    if (a != b) return a < b;
    return x.at("assignment") < y.at("assignment");
  });
  return json{{"schema", kQuboSchema},
              {"ideal", ideal_to_json(ideal)},
              {"solutions", sorted},
              {"ground_energy", ground.to_string()},
              {"matches_brute_force", found == all}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial Hartree-Fock root finding and simulated quantum phase estimation", "hfroots"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hfroots 1.0.0");

  std::string input;
  std::string out_path;
  IdealArgs ideal_args;
  bool real_only = false;
  std::string primary;

  auto* groebner = app.add_subcommand("groebner", "Reduced Groebner basis of an ideal file");
  groebner->add_option("input", input, "Ideal file ('-' for stdin)")->required();
  groebner->add_option("--order", ideal_args.order, "Monomial order: lex or degrevlex");
  groebner->add_option("--vars", ideal_args.vars, "Variables, largest first (e.g. x,y,e)");
  groebner->add_option("--out", out_path, "Output path");

  auto* solve = app.add_subcommand("solve", "All roots of a zero-dimensional ideal");
  solve->add_option("input", input, "Ideal or Groebner-basis file ('-' for stdin)")->required();
  solve->add_option("--order", ideal_args.order, "Monomial order: lex or degrevlex");
  solve->add_option("--vars", ideal_args.vars, "Variables, largest first");
  solve->add_flag("--real-only", real_only, "Drop roots with a non-real component");
  solve->add_option("--primary", primary, "Variable whose matrix is decomposed first");
  solve->add_option("--out", out_path, "Output path");

  auto* hf = app.add_subcommand("hf", "Hartree-Fock model helpers");
  hf->require_subcommand(1);
  auto* build = hf->add_subcommand("build-ideal", "Stationarity ideal of an objective polynomial");
  std::string fixture;
  std::string fix_r;
  bool toy = false;
  build->add_option("--fixture", fixture, "Objective polynomial file in (R, x, y, e)");
  build->add_option("--fix-R", fix_r, "Substitute R = p/q");
  build->add_flag("--toy", toy, "Emit the two-site toy ideal instead");
  build->add_option("--out", out_path, "Output path");

  QpeArgs qa;
  auto* qpe = app.add_subcommand("qpe", "Simulated phase estimation on a matrix or an ideal");
  qpe->add_option("input", qa.input, "Matrix JSON or ideal file ('-' for stdin)")->required();
  qpe->add_option("--bits", qa.bits, "Phase bits per register")->check(CLI::Range(1, 20));
  qpe->add_option("--seed", qa.seed, "Seed for random initial states");
  qpe->add_option("--init", qa.init, "Initial state: eigenspace, real-eigvecs, random, filtered, state");
  qpe->add_option("--var", qa.var, "Variable selecting the eigenspace or filtered matrix");
  qpe->add_option("--eigenvalue", qa.eigenvalue, "Eigenvalue of --var defining the eigenspace");
  qpe->add_option("--shifts", qa.shifts, "Inverse-power shifts, comma separated (re or re:im)");
  qpe->add_option("--iterations", qa.iterations, "Inverse-power iterations")->check(CLI::PositiveNumber);
  qpe->add_option("--state", qa.state, "Explicit initial state, comma separated (re or re:im)");
  qpe->add_option("--window", qa.window, "Spectral window: auto, none or center:radius");
  qpe->add_option("--engine", qa.engine, "Simulation engine: auto, dense, spectral");
  qpe->add_option("--branch-prune", qa.branch_prune, "Drop joint branches below this probability")
      ->check(CLI::NonNegativeNumber);
  qpe->add_option("--order", qa.ideal.order, "Monomial order for ideal input");
  qpe->add_option("--vars", qa.ideal.vars, "Variables for ideal input");
  qpe->add_option("--out", qa.out, "Output path");

  auto* qubo = app.add_subcommand("qubo", "Solve a QUBO instance through its polynomial ideal");
  qubo->add_option("input", input, "QUBO JSON file ('-' for stdin)")->required();
  qubo->add_option("--out", out_path, "Output path");

  auto* fable = app.add_subcommand("fable", "Compressed block-encoding circuit of a matrix");
  double prune_tol = 0.0;
  fable->add_option("input", input, "Matrix JSON file ('-' for stdin)")->required();
  fable->add_option("--prune-tol", prune_tol, "Drop rotations with |angle| at most this")
      ->check(CLI::NonNegativeNumber);
  fable->add_option("--out", out_path, "Output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "hfroots 1.0.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (groebner->parsed()) {
      const IdealInput ideal = read_ideal(read_input(input, in), ideal_args.options());
      const GroebnerBasis g = basis_of(ideal);
      std::optional<QuotientBasis> q;
      try {
        q = standard_monomials(g);
      } catch (const NotZeroDimensional&) {
      }
      json j = groebner_to_json(g, q ? &*q : nullptr);
      if (!q) j["quotient"] = json{{"zero_dimensional", false}};
      emit(j, out_path, out);
    } else if (solve->parsed()) {
      const IdealInput ideal = read_ideal(read_input(input, in), ideal_args.options());
      const MultMatrixSet set(standard_monomials(basis_of(ideal)));
      SolveOptions so;
      if (!primary.empty()) so.primary_variable = set.ring().index_of(primary);
      RootSet roots = solve_system(set, so);
      if (real_only) {
        double scale = 1.0;
        for (const Root& r : roots.roots) scale = std::max(scale, 1.0 + r.point.cwiseAbs().maxCoeff());
        roots = filter_real(roots, 1e-8 * scale);
      }
      json j = roots_to_json(roots);
      j["basis"] = set.basis().labels();
      emit(j, out_path, out);
    } else if (build->parsed()) {
      if (toy) {
        emit(ideal_to_json(build_toy_ideal()), out_path, out);
      } else {
        if (fixture.empty()) throw UsageError("hf build-ideal needs --fixture or --toy");
        ObjectiveSpec spec{parse_objective(read_input(fixture, in)), std::nullopt, std::nullopt};
        if (!fix_r.empty()) spec.fixed_R = Rational::from_string(fix_r);
        emit(ideal_to_json(build_hf_ideal(spec)), out_path, out);
      }
    } else if (qpe->parsed()) {
      const std::string text = read_input(qa.input, in);
      const auto first = text.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) throw UsageError("QPE input is empty");
      std::mt19937_64 rng(qa.seed);
      bool is_matrix = text[first] == '[';
      if (text[first] == '{') {
        json probe;
        try {
          probe = json::parse(text);
        } catch (const json::parse_error& e) {
          throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
        }
        is_matrix = probe.value("schema", "") == kMatrixSchema;
      }
      json j = is_matrix ? run_qpe_matrix(qa, matrix_from_json(json::parse(text)), rng) : run_qpe_ideal(qa, text, rng);
      emit(j, qa.out, out);
    } else if (qubo->parsed()) {
      emit(run_qubo(read_input(input, in)), out_path, out);
    } else if (fable->parsed()) {
      json mj;
      try {
        mj = json::parse(read_input(input, in));
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
      }
      emit(fable_to_json(fable_compress(matrix_from_json(mj), prune_tol)), out_path, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const RingError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ResourceLimitExceeded& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const NotZeroDimensional& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace hfroots
