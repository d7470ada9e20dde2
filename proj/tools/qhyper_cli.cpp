// qhyper command line front end.
//
// Exit codes: 0 success, 1 usage error, 2 invalid input or failed
// validation, 3 solver budget exhausted.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhyper/ample.hpp"
#include "qhyper/coarse.hpp"
#include "qhyper/gh.hpp"
#include "qhyper/hull.hpp"
#include "qhyper/io.hpp"

using namespace qhyper;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  double tol = kTriangleTol;
  std::size_t samples = 0;
  std::size_t restarts = 4;
  std::uint64_t budget = kDefaultGhBudget;
  bool exact = false;
  std::string witness;

  std::vector<std::string> inputs;
  std::string op;
  std::string subset;
  std::string subset_b;
  std::string with;
  std::string mode = "sym";
  std::string map;
  bool matrix = false;
  std::string demo_name;
};

// Raised when an input loads but fails the axioms; carries the report.
struct InvalidSpace {
  std::string path;
  AxiomReport report;
};

QSpace load(const std::string& path, const Options& opt) {
  const io::RawSpace raw = io::load_raw(path);
  const AxiomReport r = validate(raw.d, opt.tol);
  if (!r.satisfies_M1star || !r.satisfies_M2) throw InvalidSpace{path, r};
  return raw.build(opt.tol);
}

json tolerances(const Options& opt) {
  json t = io::tolerance_ledger();
  t["triangle_tol"] = opt.tol;
  return t;
}

std::string classify(const AxiomReport& r) {
  if (!r.satisfies_M1star || !r.satisfies_M2) return "invalid";
  if (r.is_metric) return "metric";
  if (r.is_quasi_metric()) return "quasi-metric";
  return "pseudo-quasi-metric";
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(cell, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != cell.size() || cell.front() == '-') throw ParseError("bad index '" + cell + "' in '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ParseError("empty index list");
  return out;
}

// Inline "0,1,1" or a JSON file holding a map table.
std::vector<std::size_t> read_map(const std::string& arg) {
  if (arg.find_first_not_of("0123456789, ") == std::string::npos) return parse_indices(arg);
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open map file " + arg);
  try {
    return io::map_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in map file near byte ") + std::to_string(e.byte));
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void print_matrix(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) std::cout << (j ? " " : "  ") << fmt(m(i, j));
    std::cout << "\n";
  }
}

void print_ledger(const Options& opt) {
  const json t = tolerances(opt);
  std::cout << "tolerances:";
  for (const auto& [k, v] : t.items()) std::cout << " " << k << "=" << v.dump();
  std::cout << "\n";
}

// ---------------------------------------------------------------- commands

int cmd_validate(const Options& opt) {
  const io::RawSpace raw = io::load_raw(opt.inputs.at(0));
  const AxiomReport r = validate(raw.d, opt.tol);
  const std::string cls = classify(r);
  if (opt.json) {
    std::cout << json{{"command", "validate"},
                      {"n", raw.d.size()},
                      {"classification", cls},
                      {"report", io::report_to_json(r)},
                      {"tolerances", tolerances(opt)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "points: " << raw.d.size() << "\nclassification: " << cls << "\n";
    std::cout << "M1 " << r.satisfies_M1 << "  M1* " << r.satisfies_M1star << "  M2 " << r.satisfies_M2
              << "  M3 " << r.satisfies_M3 << "\n";
    for (const Violation& v : r.violations) {
      std::cout << "  " << to_string(v.axiom) << " at (";
      for (std::size_t k = 0; k < v.witness.size(); ++k) std::cout << (k ? "," : "") << v.witness[k];
      std::cout << ") magnitude " << fmt(v.magnitude) << "\n";
    }
    if (r.violation_count > r.violations.size())
      std::cout << "  ... " << r.violation_count - r.violations.size() << " more\n";
    print_ledger(opt);
  }
  return cls == "invalid" ? kExitInvalid : kExitOk;
}

int cmd_transform(const Options& opt) {
  const QSpace x = load(opt.inputs.at(0), opt);
  json out{{"command", "transform"}, {"op", opt.op}};
  std::optional<QSpace> space;
  std::optional<double> value;
  auto subset = [&](const std::string& s, const char* flag) {
    if (s.empty()) throw Error(ErrorCode::EmptySubset, std::string(flag) + " is required for " + opt.op);
    return SubsetRef(x.size(), parse_indices(s));
  };

  if (opt.op == "conjugate") {
    space = dualize(x, DualMode::Conjugate);
  } else if (opt.op == "symmetrize") {
    space = dualize(x, DualMode::Symmetrize);
  } else if (opt.op == "restrict") {
    space = restrict(x, subset(opt.subset, "--subset"));
  } else if (opt.op == "product") {
    if (opt.with.empty()) throw Error(ErrorCode::SpaceMismatch, "--with is required for product");
    space = product_sup(x, load(opt.with, opt));
  } else if (opt.op == "hausdorff") {
    value = hausdorff(x, subset(opt.subset, "--subset"), subset(opt.subset_b, "--subset-b"),
                      opt.mode == "quasi" ? HausdorffMode::Quasi : HausdorffMode::Sym);
    out["mode"] = opt.mode;
  } else if (opt.op == "largeness") {
    value = largeness_constant(x, subset(opt.subset, "--subset"));
  } else if (opt.op == "convexity") {
    value = metric_convexity_defect(x);
  } else {
    value = asym_defect(x);
  }

  if (space) out["space"] = io::space_to_json(*space);
  if (value) out["value"] = *value;
  out["tolerances"] = tolerances(opt);
  if (opt.json) {
    std::cout << out.dump(2) << "\n";
  } else if (space) {
    std::cout << "labels:";
    for (const auto& l : space->labels()) std::cout << " " << l;
    std::cout << "\n";
    print_matrix(space->matrix());
  } else {
    std::cout << opt.op << ": " << fmt(*value) << "\n";
  }
  return kExitOk;
}

int cmd_hull(const Options& opt) {
  const QSpace x = load(opt.inputs.at(0), opt);
  const std::size_t k = opt.samples ? opt.samples : 100;
  const HullSample h = sample_hull(x, k, opt.seed);
  json out{{"command", "hull"}, {"candidates", k}, {"hull", io::hull_to_json(h)}};
  const QSpace q = hull_as_qspace(h);
  if (opt.matrix) out["matrix"] = q.matrix().rows();
  std::optional<DiagonalReport> diag;
  if (x.report().satisfies_M3) {
    diag = metric_diag_check(x, h);
    out["diagonal"] = {{"diagonal", diag->diagonal},
                       {"non_diagonal", diag->non_diagonal},
                       {"diagonal_minimal", diag->diagonal_minimal},
                       {"max_sup_norm_error", diag->max_sup_norm_error}};
  }
  out["tolerances"] = tolerances(opt);
  if (opt.json) {
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "hull points: " << h.points.size() << " (seed " << h.seed << ", spread " << fmt(h.spread)
            << ")\n";
  for (std::size_t i = 0; i < h.points.size(); ++i) {
    std::cout << "  " << q.labels()[i] << "  f1=(";
    for (std::size_t j = 0; j < x.size(); ++j) std::cout << (j ? "," : "") << fmt(h.points[i].f1[j]);
    std::cout << ") f2=(";
    for (std::size_t j = 0; j < x.size(); ++j) std::cout << (j ? "," : "") << fmt(h.points[i].f2[j]);
    std::cout << ")\n";
  }
  if (opt.matrix) {
    std::cout << "D matrix:\n";
    print_matrix(q.matrix());
  }
  if (diag)
    std::cout << "diagonal pairs: " << diag->diagonal << ", non-diagonal: " << diag->non_diagonal
              << ", diagonal minimal: " << (diag->diagonal_minimal ? "yes" : "no") << "\n";
  print_ledger(opt);
  return kExitOk;
}

std::uint64_t effective_budget(const Options& opt) {
  return opt.exact ? std::numeric_limits<std::uint64_t>::max() : opt.budget;
}

int cmd_gh(const Options& opt) {
  const QSpace x = load(opt.inputs.at(0), opt);
  const QSpace y = load(opt.inputs.at(1), opt);
  const GhResult g = gh_exact(x, y, effective_budget(opt));
  const double dis = distortion(x, y, g.best);
  const json corr = io::correspondence_to_json(g.best);
  if (!opt.witness.empty()) {
    const RoughIsometryWitness w = rough_isometry_from_correspondence(x, y, g.best);
    json wj = io::witness_to_json(w);
    wj["correspondence"] = corr;
    wj["distortion"] = dis;
    write_json_file(opt.witness, wj);
  }
  if (opt.json) {
    std::cout << json{{"command", "gh"},
                      {"value", g.value},
                      {"exact", g.exact},
                      {"nodes", g.nodes},
                      {"distortion", dis},
                      {"correspondence", corr},
                      {"tolerances", tolerances(opt)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << fmt(g.value) << "\n";
    if (!g.exact) std::cerr << "budget exhausted after " << g.nodes << " nodes; value is an upper bound\n";
  }
  return g.exact ? kExitOk : kExitBudget;
}

int cmd_rough_iso(const Options& opt) {
  const QSpace x = load(opt.inputs.at(0), opt);
  const QSpace y = load(opt.inputs.at(1), opt);
  bool exact = true;
  RoughIsometryWitness w;
  if (!opt.map.empty()) {
    const auto phi = read_map(opt.map);
    if (phi.size() != x.size())
      throw Error(ErrorCode::LengthMismatch,
                  "map has " + std::to_string(phi.size()) + " entries for " + std::to_string(x.size()) + " points");
    for (std::size_t v : phi)
      if (v >= y.size()) throw Error(ErrorCode::IndexOutOfRange, "map target " + std::to_string(v) + " out of range");
    w = verify_rough_isometry(phi, x, y);
  } else {
    const GhResult g = gh_exact(x, y, effective_budget(opt));
    exact = g.exact;
    w = rough_isometry_from_correspondence(x, y, g.best);
  }
  const RoughInverse inv = sym_rough_inverse(x, y, w);
  const Correspondence r = correspondence_from_rough_isometry(x, y, w);
  const double dis = distortion(x, y, r);
  json out{{"command", "rough-iso"},
           {"source", opt.map.empty() ? "gh" : "map"},
           {"witness", io::witness_to_json(w)},
           {"inverse",
            {{"map", inv.map},
             {"nonexpansion", inv.nonexpansion},
             {"phi_psi_closeness", inv.phi_psi_closeness},
             {"psi_phi_closeness", inv.psi_phi_closeness},
             {"within_bounds", inv.within_bounds}}},
           {"correspondence", io::correspondence_to_json(r)},
           {"distortion", dis},
           {"gh_upper", 0.5 * dis},
           {"exact", exact},
           {"tolerances", tolerances(opt)}};
  if (!opt.witness.empty()) write_json_file(opt.witness, out["witness"]);
  if (opt.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "map:";
    for (std::size_t v : w.map) std::cout << " " << v;
    std::cout << "\neps_embed " << fmt(w.eps_embed) << "  eps_large " << fmt(w.eps_large) << "  eps "
              << fmt(w.eps) << "\n";
    std::cout << "inverse:";
    for (std::size_t v : inv.map) std::cout << " " << v;
    std::cout << "\n  nonexpansion " << fmt(inv.nonexpansion) << " (<= 3eps), phi.psi " << fmt(inv.phi_psi_closeness)
              << " (<= eps), psi.phi " << fmt(inv.psi_phi_closeness) << " (<= 2eps): "
              << (inv.within_bounds ? "within bounds" : "OUT OF BOUNDS") << "\n";
    std::cout << "correspondence distortion " << fmt(dis) << ", gh <= " << fmt(0.5 * dis) << "\n";
    print_ledger(opt);
  }
  return exact ? kExitOk : kExitBudget;
}

int cmd_delta(const Options& opt) {
  const QSpace x = load(opt.inputs.at(0), opt);
  const std::size_t samples = opt.samples ? opt.samples : 200;
  const DeltaEstimate d = delta_estimate(x, samples, opt.restarts, opt.seed);
  if (opt.json) {
    std::cout << json{{"command", "delta"},
                      {"samples", samples},
                      {"restarts", opt.restarts},
                      {"seed", opt.seed},
                      {"lower", d.lower},
                      {"heuristic_upper", d.heuristic_upper},
                      {"argmax", io::pair_to_json(d.argmax)},
                      {"tolerances", tolerances(opt)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "lower " << fmt(d.lower) << "\nheuristic_upper " << fmt(d.heuristic_upper) << "\n";
    print_ledger(opt);
  }
  return kExitOk;
}

int cmd_fixpoint(const Options& opt) {
  const QSpace x = load(opt.inputs.at(0), opt);
  std::vector<SelfMap> maps;
  if (!opt.map.empty()) {
    maps.push_back(read_map(opt.map));
  } else {
    maps = random_nonexpansive(x, opt.seed, 100'000, opt.samples ? opt.samples : 64);
  }
  json rows = json::array();
  double max_gap = 0.0;
  for (const SelfMap& t : maps) {
    const FixedPointGap g = fixed_point_gap(x, t);
    max_gap = std::max(max_gap, g.gap);
    rows.push_back({{"map", t}, {"gap", g.gap}, {"argmin", g.argmin}});
  }
  const DeltaEstimate d = delta_estimate(x, 200, opt.restarts, opt.seed);
  const bool within = max_gap <= 2 * d.heuristic_upper + kNonexpansiveTol;
  if (opt.json) {
    std::cout << json{{"command", "fixpoint"},
                      {"maps", rows},
                      {"max_gap", max_gap},
                      {"delta", {{"lower", d.lower}, {"heuristic_upper", d.heuristic_upper}}},
                      {"within_2delta", within},
                      {"tolerances", tolerances(opt)}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& r : rows) std::cout << "map " << r["map"].dump() << "  gap " << fmt(r["gap"]) << "  at "
                                         << r["argmin"] << "\n";
    std::cout << "max gap " << fmt(max_gap) << ", 2*delta (heuristic upper) " << fmt(2 * d.heuristic_upper)
              << (within ? " (within)" : " (EXCEEDED)") << "\n";
    print_ledger(opt);
  }
  return kExitOk;
}

int cmd_demo(const Options& opt, bool show) {
  if (!show) {
    const auto names = io::demo_names();
    if (opt.json) {
      std::cout << json{{"command", "demo"}, {"demos", names}}.dump(2) << "\n";
    } else {
      for (const auto& n : names) std::cout << n << "\n";
    }
    return kExitOk;
  }
  const QSpace x = io::demo(opt.demo_name);
  if (opt.json) {
    std::cout << json{{"command", "demo"}, {"name", opt.demo_name}, {"space", io::space_to_json(x)}}.dump(2)
              << "\n";
  } else {
    std::cout << io::emit_space(x) << "\n";
  }
  return kExitOk;
}

void emit_error(const Options& opt, const std::string& command, json error) {
  if (opt.json) {
    std::cout << json{{"command", command}, {"error", std::move(error)}}.dump(2) << "\n";
  } else {
    std::cerr << "error: " << error["message"].get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite quasi-metric spaces, their q-hyperconvex hulls and Gromov-Hausdorff distances"};
  app.require_subcommand(1);
  Options opt;

  auto add_json = [&](CLI::App* c) { c->add_flag("--json", opt.json, "Emit JSON"); };
  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", opt.tol, "Triangle inequality tolerance")->check(CLI::NonNegativeNumber);
  };
  auto add_inputs = [&](CLI::App* c, int n) {
    c->add_option("inputs", opt.inputs, n == 1 ? "Space file (.json, .csv or demo:<name>)" : "Two space files")
        ->required()
        ->expected(n);
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the quasi-metric axioms");
  add_inputs(validate_cmd, 1);
  add_json(validate_cmd);
  add_tol(validate_cmd);

  auto* transform_cmd = app.add_subcommand("transform", "Derived spaces and scalar invariants");
  add_inputs(transform_cmd, 1);
  add_json(transform_cmd);
  add_tol(transform_cmd);
  transform_cmd->add_option("--op", opt.op, "Operation")
      ->required()
      ->check(CLI::IsMember({"conjugate", "symmetrize", "restrict", "product", "hausdorff", "largeness",
                             "convexity", "asym"}));
  transform_cmd->add_option("--subset", opt.subset, "Comma separated point indices");
  transform_cmd->add_option("--subset-b", opt.subset_b, "Second subset for hausdorff");
  transform_cmd->add_option("--with", opt.with, "Second space for product");
  transform_cmd->add_option("--mode", opt.mode, "Hausdorff mode")->check(CLI::IsMember({"quasi", "sym"}));

  auto* hull_cmd = app.add_subcommand("hull", "Sample the hull of minimal ample pairs");
  add_inputs(hull_cmd, 1);
  add_json(hull_cmd);
  add_tol(hull_cmd);
  hull_cmd->add_option("--samples", opt.samples, "Candidate count (default 100)");
  hull_cmd->add_option("--seed", opt.seed, "Random seed");
  hull_cmd->add_flag("--matrix", opt.matrix, "Also print the induced D matrix");

  auto* gh_cmd = app.add_subcommand("gh", "Exact Gromov-Hausdorff distance");
  add_inputs(gh_cmd, 2);
  add_json(gh_cmd);
  add_tol(gh_cmd);
  auto* exact_flag = gh_cmd->add_flag("--exact", opt.exact, "Search without a node budget");
  gh_cmd->add_option("--budget", opt.budget, "Node budget")->excludes(exact_flag);
  gh_cmd->add_option("--witness", opt.witness, "Write a rough-isometry witness to this path");

  auto* ri_cmd = app.add_subcommand("rough-iso", "Rough isometry witness, inverse and correspondence");
  add_inputs(ri_cmd, 2);
  add_json(ri_cmd);
  add_tol(ri_cmd);
  ri_cmd->add_option("--map", opt.map, "Map X->Y: inline '0,1,...' or a JSON file; default from gh");
  auto* ri_exact = ri_cmd->add_flag("--exact", opt.exact, "Search without a node budget");
  ri_cmd->add_option("--budget", opt.budget, "Node budget")->excludes(ri_exact);
  ri_cmd->add_option("--witness", opt.witness, "Write the witness to this path");

  auto* delta_cmd = app.add_subcommand("delta", "Estimate the coarse injectivity constant");
  add_inputs(delta_cmd, 1);
  add_json(delta_cmd);
  add_tol(delta_cmd);
  delta_cmd->add_option("--samples", opt.samples, "Hull samples (default 200)");
  delta_cmd->add_option("--restarts", opt.restarts, "Local ascent restarts");
  delta_cmd->add_option("--seed", opt.seed, "Random seed");

  auto* fix_cmd = app.add_subcommand("fixpoint", "Fixed-point gaps of non-expansive self-maps");
  add_inputs(fix_cmd, 1);
  add_json(fix_cmd);
  add_tol(fix_cmd);
  fix_cmd->add_option("--map", opt.map, "Self-map: inline '0,1,...' or a JSON file; default enumerates");
  fix_cmd->add_option("--samples", opt.samples, "Sampled maps when enumeration is too large (default 64)");
  fix_cmd->add_option("--restarts", opt.restarts, "Local ascent restarts for the delta estimate");
  fix_cmd->add_option("--seed", opt.seed, "Random seed");

  auto* demo_cmd = app.add_subcommand("demo", "Built-in spaces");
  demo_cmd->require_subcommand(1);
  auto* demo_list = demo_cmd->add_subcommand("list", "List built-in spaces");
  add_json(demo_list);
  auto* demo_show = demo_cmd->add_subcommand("show", "Print a built-in space");
  demo_show->add_option("name", opt.demo_name, "Demo name")->required();
  add_json(demo_show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "validate") return cmd_validate(opt);
    if (command == "transform") return cmd_transform(opt);
    if (command == "hull") return cmd_hull(opt);
    if (command == "gh") return cmd_gh(opt);
    if (command == "rough-iso") return cmd_rough_iso(opt);
    if (command == "delta") return cmd_delta(opt);
    if (command == "fixpoint") return cmd_fixpoint(opt);
    return cmd_demo(opt, demo_show->parsed());
  } catch (const InvalidSpace& e) {
    emit_error(opt, command,
               {{"code", to_string(ErrorCode::ValidationFailed)},
                {"message", e.path + " is not a pseudo-quasi-metric"},
                {"report", io::report_to_json(e.report)}});
    return kExitInvalid;
  } catch (const NoConvergence& e) {
    emit_error(opt, command,
               {{"code", to_string(e.code())},
                {"message", e.what()},
                {"iterations", e.iterations()},
                {"residual", e.residual()}});
    return kExitBudget;
  } catch (const ParseError& e) {
    json err{{"code", to_string(e.code())}, {"message", e.what()}};
    if (e.row()) err["row"] = e.row();
    if (e.column()) err["column"] = e.column();
    emit_error(opt, command, std::move(err));
    return kExitInvalid;
  } catch (const Error& e) {
    emit_error(opt, command, {{"code", to_string(e.code())}, {"message", e.what()}});
    return e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitInvalid;
  } catch (const std::exception& e) {
    emit_error(opt, command, {{"code", "InternalError"}, {"message", e.what()}});
    return kExitInvalid;
  }
}
