#include "cli.hpp"

#include "fahp/error.hpp"
#include "fahp/export.hpp"
#include "fahp/project_io.hpp"
#include "fahp/service.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <optional>

namespace fahp::cli {

namespace {

struct Options {
  std::string project;
  std::string format = "table";
  std::optional<std::string> method;
  std::optional<std::string> defuzz;
  std::optional<double> threshold;
  std::optional<double> factor;
  std::optional<std::string> node;
  std::optional<std::string> output;
  int port = 8080;
};

struct Loaded {
  ProjectFile project;
  Hierarchy hierarchy;
};

Loaded load(const Options& o) {
  Loaded l{load_project_file(o.project), {}};
  auto& s = l.project.settings;
  if (o.method) s.method = parse_derivation_method(*o.method);
  if (o.defuzz) s.defuzz = parse_defuzz_method(*o.defuzz);
  if (o.threshold) s.cr_threshold = *o.threshold;
  if (o.factor) s.sensitivity_factor = *o.factor;
  l.hierarchy = to_hierarchy(l.project);
  return l;
}

LocalWeightOptions weight_options(const Settings& s) { return {s.method, s.defuzz, s.cr_threshold, false}; }

std::string label_of(const Hierarchy& h, const std::string& id) {
  if (id == h.goal_id) return h.goal;
  for (const auto& a : h.alternatives)
    if (a.id == id) return a.label;
  if (const auto* n = h.find(id)) return n->label;
  return id;
}

// Writes to --output when given, otherwise to `out`.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (!o.output) {
    out << text;
    return;
  }
  std::ofstream f(*o.output, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw IoError(fmt::format("cannot write '{}'", *o.output));
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto p = load_project_file(o.project);
  auto settings = p.settings;
  if (o.defuzz) settings.defuzz = parse_defuzz_method(*o.defuzz);
  if (o.threshold) settings.cr_threshold = *o.threshold;
  const auto report = validate_project(p);
  std::map<std::string, ConsistencyReport> cr;
  if (report.ok()) cr = assess_consistency(to_hierarchy(p), settings.defuzz, settings.cr_threshold);
  const bool consistent = std::all_of(cr.begin(), cr.end(), [](const auto& kv) { return kv.second.acceptable; });

  if (o.format == "json") {
    auto j = to_json(report);
    nlohmann::json c = nlohmann::json::object();
    if (report.ok()) {
      const auto h = to_hierarchy(p);
      for (const auto& [node, r] : cr) c[node] = to_json(r, h.compared_ids(node));
    }
    j["consistency"] = std::move(c);
    j["valid"] = report.ok() && consistent;
    out << j.dump(2) << "\n";
  } else {
    if (report.ok()) {
      out << fmt::format("structure: ok ({} top-level criteria, {} leaves, {} alternatives)\n", p.criteria.size(),
                         to_hierarchy(p).leaves().size(), p.alternatives.size());
    } else {
      out << fmt::format("structure: {} violation(s)\n", report.violations.size());
      for (const auto& v : report.violations) out << fmt::format("  [{}] {}\n", to_string(v.kind), v.message);
    }
    for (const auto& [node, r] : cr)
      out << fmt::format("  {:<8} n={:<2} CR={:.4f} {}\n", node, r.order, r.cr, r.acceptable ? "ok" : "REVISE");
    out << ((report.ok() && consistent) ? "valid\n" : "invalid\n");
  }
  return report.ok() && consistent ? kOk : kInvalid;
}

int cmd_weights(const Options& o, std::ostream& out) {
  const auto l = load(o);
  const auto local = compute_local_weights(l.hierarchy, weight_options(l.project.settings));
  std::vector<std::string> nodes;
  if (o.node) {
    if (!local.contains(*o.node)) throw ValidationError(fmt::format("unknown node '{}'", *o.node));
    nodes.push_back(*o.node);
  } else {
    for (const auto& [id, w] : local) {
      (void)w;
      if (l.hierarchy.matrices.contains(id) || id == l.hierarchy.goal_id) nodes.push_back(id);
    }
  }

  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& n : nodes) j[n] = to_json(local.at(n));
    out << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "node,item,weight\n";
    for (const auto& n : nodes)
      for (std::size_t k = 0; k < local.at(n).size(); ++k)
        out << fmt::format("{},{},{:.6f}\n", n, local.at(n).item_ids[k], local.at(n).values[k]);
  } else {
    for (const auto& n : nodes) {
      const auto& w = local.at(n);
      out << fmt::format("{} ({}) [{}]\n", n, label_of(l.hierarchy, n), to_string(w.method));
      for (std::size_t k = 0; k < w.size(); ++k)
        out << fmt::format("  {:<6} {:<42} {:.3f}\n", w.item_ids[k], label_of(l.hierarchy, w.item_ids[k]), w.values[k]);
    }
  }
  return kOk;
}

void print_rank_table(const Hierarchy& h, const DecisionResult& r, std::ostream& out) {
  out << fmt::format("{:<20}", "Alternative");
  for (const auto& c : r.top_level_ids) out << fmt::format(" {:>7}", c);
  out << fmt::format(" {:>8} {:>5}\n", "Global", "Rank");
  for (std::size_t a = 0; a < r.alternative_ids.size(); ++a) {
    const auto& id = r.alternative_ids[a];
    out << fmt::format("{:<20}", id + " " + label_of(h, id));
    for (const auto& c : r.top_level_ids) out << fmt::format(" {:>7.3f}", r.criterion_scores.at(c)[a]);
    const auto rank = std::find(r.ranking.order.begin(), r.ranking.order.end(), id) - r.ranking.order.begin() + 1;
    out << fmt::format(" {:>8.4f} {:>5}\n", r.global_scores[a], rank);
  }
  out << fmt::format("{:<20}", "Criterion weight");
  for (const auto& c : r.top_level_ids) out << fmt::format(" {:>7.3f}", r.local_weights.at(h.goal_id).at(c));
  out << "\n\nRanking: " << fmt::format("{}", fmt::join(r.ranking.order, " > ")) << "\n";
  for (const auto& t : r.ranking.ties) out << "Tied: " << fmt::format("{}", fmt::join(t, ", ")) << "\n";
}

int cmd_rank(const Options& o, std::ostream& out) {
  const auto l = load(o);
  const auto result = score_alternatives(l.hierarchy, compute_local_weights(l.hierarchy, weight_options(l.project.settings)));
  if (o.format == "json")
    out << to_json(result).dump(2) << "\n";
  else if (o.format == "csv")
    out << export_csv(result);
  else
    print_rank_table(l.hierarchy, result, out);
  return kOk;
}

SensitivityReport sensitivity_of(const Loaded& l, const DecisionResult& base, const Options& o) {
  const double factor = l.project.settings.sensitivity_factor;
  if (!o.node) return run_scenarios(l.hierarchy, base, factor);
  return run_scenario_set(l.hierarchy, base,
                          {{"Baseline", std::nullopt, 1.0}, {fmt::format("Boost {}", *o.node), *o.node, factor}});
}

int cmd_sensitivity(const Options& o, std::ostream& out) {
  const auto l = load(o);
  const auto base = score_alternatives(l.hierarchy, compute_local_weights(l.hierarchy, weight_options(l.project.settings)));
  const auto report = sensitivity_of(l, base, o);
  if (o.format == "json") {
    out << to_json(report).dump(2) << "\n";
  } else if (o.format == "csv") {
    out << export_csv(report);
  } else {
    for (const auto& s : report.scenarios) {
      out << fmt::format("{:<12} {:<5} x{:<5.2f}", s.scenario.name, s.scenario.boosted_node.value_or("-"), s.scenario.factor);
      for (std::size_t a = 0; a < report.alternative_ids.size(); ++a)
        out << fmt::format(" {}={:.4f}", report.alternative_ids[a], s.global_scores[a]);
      out << "  " << fmt::format("{}", fmt::join(s.ranking.order, " > ")) << "\n";
    }
    if (report.flips.empty()) out << "\nNo rank flips relative to the baseline.\n";
    for (const auto& f : report.flips)
      out << fmt::format("flip: {}: {} now above {}\n", f.scenario, f.now_higher, f.baseline_higher);
  }
  return kOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto l = load(o);
  const auto& s = l.project.settings;
  const auto consistency = assess_consistency(l.hierarchy, s.defuzz, s.cr_threshold);
  auto opts = weight_options(s);
  opts.allow_inconsistent = true;
  const auto result = score_alternatives(l.hierarchy, compute_local_weights(l.hierarchy, opts));
  const auto sens = sensitivity_of(l, result, o);
  emit(o, out, render_report(l.hierarchy, result, &sens, consistency));
  const bool ok = std::all_of(consistency.begin(), consistency.end(), [](const auto& kv) { return kv.second.acceptable; });
  return ok ? kOk : kInvalid;
}

int cmd_export(const Options& o, std::ostream& out) {
  const auto l = load(o);
  const auto result = score_alternatives(l.hierarchy, compute_local_weights(l.hierarchy, weight_options(l.project.settings)));
  emit(o, out, o.format == "json" ? to_json(result).dump(2) + "\n" : export_csv(result));
  return kOk;
}

int cmd_serve(const Options& o, std::ostream& err) {
  auto p = load_project_file(o.project);
  Service service(std::move(p), o.project);
  const int port = service.bind("127.0.0.1", o.port);
  if (port < 0) throw IoError(fmt::format("cannot bind 127.0.0.1:{}", o.port));
  err << fmt::format("serving {} on http://127.0.0.1:{}\n", o.project, port) << std::flush;
  return service.run() ? kOk : kIo;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy AHP decision engine", "fahp"};
  app.require_subcommand(1, 1);
  Options o;

  const std::vector<std::string> formats{"table", "json", "csv"};
  auto add_project = [&](CLI::App* sub) { sub->add_option("project", o.project, "Project file (JSON)")->required(); };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "Weight derivation")->check(CLI::IsMember({"gm-middle", "buckley"}));
    sub->add_option("--defuzz", o.defuzz, "Defuzzification")->check(CLI::IsMember({"middle", "centroid"}));
    sub->add_option("--threshold", o.threshold, "CR acceptance threshold")->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(allowed));
  };

  auto* validate = app.add_subcommand("validate", "Check structure and consistency of a project");
  add_project(validate);
  add_format(validate, {"table", "json"});
  validate->add_option("--defuzz", o.defuzz)->check(CLI::IsMember({"middle", "centroid"}));
  validate->add_option("--threshold", o.threshold)->check(CLI::PositiveNumber);

  auto* weights = app.add_subcommand("weights", "Print local weights per node");
  add_project(weights);
  add_format(weights, formats);
  add_method(weights);
  weights->add_option("--node", o.node, "Only this node");

  auto* rank = app.add_subcommand("rank", "Print alternative scores and the final ranking");
  add_project(rank);
  add_format(rank, formats);
  add_method(rank);

  auto* sensitivity = app.add_subcommand("sensitivity", "Boost each top-level criterion and compare rankings");
  add_project(sensitivity);
  add_format(sensitivity, formats);
  add_method(sensitivity);
  sensitivity->add_option("--factor", o.factor, "Boost factor")->check(CLI::PositiveNumber);
  sensitivity->add_option("--node", o.node, "Boost only this criterion");

  auto* report = app.add_subcommand("report", "Write a markdown report");
  add_project(report);
  add_method(report);
  report->add_option("--factor", o.factor, "Boost factor")->check(CLI::PositiveNumber);
  report->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* exp = app.add_subcommand("export", "Write the alternative-by-criterion table");
  add_project(exp);
  add_method(exp);
  exp->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* serve = app.add_subcommand("serve", "Run the local HTTP service");
  add_project(serve);
  serve->add_option("--port", o.port, "TCP port on 127.0.0.1")->check(CLI::Range(0, 65535));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*weights) return cmd_weights(o, out);
    if (*rank) return cmd_rank(o, out);
    if (*sensitivity) return cmd_sensitivity(o, out);
    if (*report) return cmd_report(o, out);
    if (*exp) {
      if (o.format == "table") o.format = "csv";
      return cmd_export(o, out);
    }
    if (*serve) return cmd_serve(o, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  err << app.help();
  return kUsage;
}

} // namespace fahp::cli
