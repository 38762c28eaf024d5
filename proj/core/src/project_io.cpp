#include "fahp/project_io.hpp"

#include "fahp/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace fahp {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Reading

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based offset of the offending byte.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  const auto head = text.substr(0, end);
  const std::size_t line = 1 + static_cast<std::size_t>(std::count(head.begin(), head.end(), '\n'));
  const auto nl = head.rfind('\n');
  const std::size_t col = end - (nl == std::string_view::npos ? 0 : nl + 1) + 1;
  return {line, col};
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ValidationError(fmt::format("{}: {}", path, what));
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, fmt::format("missing required field '{}'", key));
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

int as_score(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer score");
  const auto s = j.get<long long>();
  if (s == 0 || s > 9 || s < -9) bad(path, fmt::format("score {} outside -9..-1, 1..9", s));
  return static_cast<int>(s == -1 ? 1 : s);
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

CriterionNode read_criterion(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  CriterionNode n;
  n.id = as_string(field(j, "id", path), path + ".id");
  if (n.id.empty()) bad(path + ".id", "must not be empty");
  n.label = j.contains("label") ? as_string(j["label"], path + ".label") : n.id;
  if (j.contains("sdg")) {
    const auto& tags = as_array(j["sdg"], path + ".sdg");
    for (std::size_t k = 0; k < tags.size(); ++k) n.sdg_tags.push_back(as_string(tags[k], fmt::format("{}.sdg[{}]", path, k)));
  }
  if (j.contains("children")) {
    const auto& kids = as_array(j["children"], path + ".children");
    for (std::size_t k = 0; k < kids.size(); ++k)
      n.children.push_back(read_criterion(kids[k], fmt::format("{}.children[{}]", path, k)));
  }
  return n;
}

std::optional<double> opt_number(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  return as_number(obj[key], path + "." + key);
}

JudgmentSource read_judgment(const json& j, const std::string& path, const Hierarchy& shape) {
  if (!j.is_object()) bad(path, "expected an object");
  JudgmentSource src;
  src.node_id = as_string(field(j, "node", path), path + ".node");
  if (!shape.has_node(src.node_id))
    throw ValidationError(fmt::format("{}.node: unknown node '{}'", path, src.node_id));
  if (j.contains("expert")) src.expert_id = as_string(j["expert"], path + ".expert");
  src.published_cr = opt_number(j, "published_cr", path);

  const auto ids = shape.compared_ids(src.node_id);
  const std::size_t n = ids.size();
  const int forms = int(j.contains("scores")) + int(j.contains("pairs")) + int(j.contains("tfn"));
  if (forms != 1) bad(path, "exactly one of 'scores', 'pairs' or 'tfn' is required");

  if (j.contains("scores")) {
    // Short or missing rows leave pairs unanswered; matrix_from_scores names them.
    const auto& rows = as_array(j["scores"], path + ".scores");
    if (rows.size() + 1 > n)
      bad(path + ".scores", fmt::format("node '{}' compares {} items, expected at most {} rows", src.node_id, n, n - 1));
    ExpertJudgmentSet set{src.expert_id, src.node_id, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto rp = fmt::format("{}.scores[{}]", path, i);
      const auto& row = as_array(rows[i], rp);
      if (row.size() + i + 1 > n) bad(rp, fmt::format("expected {} scores, got {}", n - 1 - i, row.size()));
      for (std::size_t k = 0; k < row.size(); ++k)
        set.upper_triangle.push_back({i, i + 1 + k, as_score(row[k], fmt::format("{}[{}]", rp, k))});
    }
    src.data = *scores_from_matrix(matrix_from_scores(ids, set));
  } else if (j.contains("pairs")) {
    const auto& pairs = as_array(j["pairs"], path + ".pairs");
    ExpertJudgmentSet set{src.expert_id, src.node_id, {}};
    auto index_of = [&](const json& v, const std::string& p) {
      const auto id = as_string(v, p);
      for (std::size_t k = 0; k < n; ++k)
        if (ids[k] == id) return k;
      bad(p, fmt::format("'{}' is not compared under node '{}'", id, src.node_id));
    };
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto pp = fmt::format("{}.pairs[{}]", path, k);
      const auto& p = as_array(pairs[k], pp);
      if (p.size() != 3) bad(pp, "expected [item_i, item_j, score]");
      set.upper_triangle.push_back({index_of(p[0], pp + "[0]"), index_of(p[1], pp + "[1]"), as_score(p[2], pp + "[2]")});
    }
    // Normalizes direction and reports gaps/duplicates.
    const auto m = matrix_from_scores(ids, set);
    src.data = *scores_from_matrix(m);
  } else {
    const auto& rows = as_array(j["tfn"], path + ".tfn");
    if (rows.size() + 1 != n)
      bad(path + ".tfn", fmt::format("node '{}' compares {} items, expected {} rows", src.node_id, n, n - 1));
    TfnUpper t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto rp = fmt::format("{}.tfn[{}]", path, i);
      const auto& row = as_array(rows[i], rp);
      if (row.size() != n - 1 - i) bad(rp, fmt::format("expected {} triples, got {}", n - 1 - i, row.size()));
      for (std::size_t k = 0; k < row.size(); ++k) {
        const auto tp = fmt::format("{}[{}]", rp, k);
        const auto& tri = as_array(row[k], tp);
        if (tri.size() != 3) bad(tp, "expected [l, m, u]");
        try {
          t.emplace_back(as_number(tri[0], tp), as_number(tri[1], tp), as_number(tri[2], tp));
        } catch (const DomainError& e) {
          bad(tp, e.what());
        }
      }
    }
    src.data = std::move(t);
  }
  return src;
}

Settings read_settings(const json& j, const std::string& path) {
  Settings s;
  if (!j.is_object()) bad(path, "expected an object");
  try {
    if (j.contains("defuzz")) s.defuzz = parse_defuzz_method(as_string(j["defuzz"], path + ".defuzz"));
    if (j.contains("method")) s.method = parse_derivation_method(as_string(j["method"], path + ".method"));
  } catch (const DomainError& e) {
    bad(path, e.what());
  }
  if (j.contains("cr_threshold")) s.cr_threshold = as_number(j["cr_threshold"], path + ".cr_threshold");
  if (j.contains("sensitivity_factor"))
    s.sensitivity_factor = as_number(j["sensitivity_factor"], path + ".sensitivity_factor");
  if (!(s.cr_threshold > 0.0)) bad(path + ".cr_threshold", "must be positive");
  if (!(s.sensitivity_factor > 0.0)) bad(path + ".sensitivity_factor", "must be positive");
  return s;
}

// Hierarchy skeleton (no judgments) used to resolve node ids while reading.
Hierarchy skeleton(const ProjectFile& p) {
  Hierarchy h;
  h.goal = p.goal;
  h.criteria = p.criteria;
  h.alternatives = p.alternatives;
  return h;
}

ProjectFile from_json(const json& root) {
  if (!root.is_object()) bad("$", "expected a JSON object");
  const auto& ver = field(root, "schema_version", "$");
  if (!ver.is_number_integer()) bad("$.schema_version", "expected an integer");
  if (ver.get<long long>() != kSchemaVersion)
    throw VersionError(fmt::format("unsupported schema_version {} (this build reads {})", ver.get<long long>(), kSchemaVersion));

  ProjectFile p;
  p.goal = as_string(field(root, "goal", "$"), "$.goal");
  const auto& crit = as_array(field(root, "criteria", "$"), "$.criteria");
  for (std::size_t k = 0; k < crit.size(); ++k) p.criteria.push_back(read_criterion(crit[k], fmt::format("$.criteria[{}]", k)));
  const auto& alts = as_array(field(root, "alternatives", "$"), "$.alternatives");
  for (std::size_t k = 0; k < alts.size(); ++k) {
    const auto path = fmt::format("$.alternatives[{}]", k);
    if (!alts[k].is_object()) bad(path, "expected an object");
    Alternative a;
    a.id = as_string(field(alts[k], "id", path), path + ".id");
    a.label = alts[k].contains("label") ? as_string(alts[k]["label"], path + ".label") : a.id;
    p.alternatives.push_back(std::move(a));
  }

  // Duplicate ids would make node lookup ambiguous; report them first.
  if (auto report = validate_hierarchy(skeleton(p)); !report.ok())
    for (const auto& v : report.violations)
      if (v.kind == Violation::Kind::DuplicateId || v.kind == Violation::Kind::EmptyLevel)
        throw ValidationError(v.message);

  const auto shape = skeleton(p);
  if (root.contains("judgments")) {
    const auto& js = as_array(root["judgments"], "$.judgments");
    for (std::size_t k = 0; k < js.size(); ++k)
      p.judgments.push_back(read_judgment(js[k], fmt::format("$.judgments[{}]", k), shape));
  }
  if (root.contains("direct_weights") && !root["direct_weights"].is_null()) {
    const auto& dw = root["direct_weights"];
    if (!dw.is_object()) bad("$.direct_weights", "expected an object keyed by leaf id");
    for (const auto& [id, entry] : dw.items()) {
      const auto path = "$.direct_weights." + id;
      if (!shape.has_node(id)) throw ValidationError(fmt::format("{}: unknown node '{}'", path, id));
      DirectWeights d;
      const json* values = &entry;
      if (entry.is_object()) {
        values = &field(entry, "weights", path);
        d.published_cr = opt_number(entry, "published_cr", path);
      }
      const auto& arr = as_array(*values, path + ".weights");
      for (std::size_t k = 0; k < arr.size(); ++k) d.weights.push_back(as_number(arr[k], fmt::format("{}.weights[{}]", path, k)));
      p.direct_weights.emplace(id, std::move(d));
    }
  }
  if (root.contains("settings")) p.settings = read_settings(root["settings"], "$.settings");

  if (auto report = validate_project(p); !report.ok()) {
    std::string msg = "invalid project:";
    for (const auto& v : report.violations) msg += "\n  " + v.message;
    throw ValidationError(msg);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Writing

double round12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  return std::stod(fmt::format("{:.12g}", v));
}

json to_json(const CriterionNode& n) {
  json j{{"id", n.id}, {"label", n.label}};
  if (!n.sdg_tags.empty()) j["sdg"] = n.sdg_tags;
  if (!n.children.empty()) {
    j["children"] = json::array();
    for (const auto& c : n.children) j["children"].push_back(to_json(c));
  }
  return j;
}

json to_json(const JudgmentSource& s, std::size_t n) {
  json j{{"node", s.node_id}};
  if (!s.expert_id.empty()) j["expert"] = s.expert_id;
  if (const auto* scores = std::get_if<ScoreUpper>(&s.data)) {
    json rows = json::array();
    for (std::size_t i = 0; i + 1 < n; ++i) rows.push_back(json::array());
    for (const auto& p : *scores) rows[p.i].push_back(p.score);
    j["scores"] = std::move(rows);
  } else {
    const auto& t = std::get<TfnUpper>(s.data);
    json rows = json::array();
    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      json row = json::array();
      for (std::size_t c = i + 1; c < n; ++c, ++k)
        row.push_back({round12(t[k].lower()), round12(t[k].middle()), round12(t[k].upper())});
      rows.push_back(std::move(row));
    }
    j["tfn"] = std::move(rows);
  }
  if (s.published_cr) j["published_cr"] = round12(*s.published_cr);
  return j;
}

bool near_rel(double a, double b) { return std::abs(a - b) <= 1e-11 * std::max({1.0, std::abs(a), std::abs(b)}); }

bool same_nodes(const std::vector<CriterionNode>& a, const std::vector<CriterionNode>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].id != b[k].id || a[k].label != b[k].label || a[k].sdg_tags != b[k].sdg_tags ||
        !same_nodes(a[k].children, b[k].children))
      return false;
  return true;
}

bool same_opt(const std::optional<double>& a, const std::optional<double>& b) {
  return a.has_value() == b.has_value() && (!a || near_rel(*a, *b));
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

JudgmentSource parse_judgment(std::string_view text, const std::string& node_id, const ProjectFile& project) {
  json body;
  try {
    body = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError(fmt::format("parse error at line {}, column {}: {}", line, col, e.what()), line, col);
  }
  if (!body.is_object()) bad("$", "expected a JSON object");
  body["node"] = node_id;
  return read_judgment(body, "$", skeleton(project));
}

ProjectFile load_project(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError(fmt::format("parse error at line {}, column {}: {}", line, col, e.what()), line, col);
  }
  return from_json(root);
}

ProjectFile load_project(std::istream& in) { return load_project(read_all(in)); }

ProjectFile load_project_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open project file '{}'", path.string()));
  try {
    return load_project(in);
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()), e.line(), e.column());
  }
}

ValidationReport validate_project(const ProjectFile& project) {
  ValidationReport report;
  if (project.schema_version != kSchemaVersion)
    report.violations.push_back({Violation::Kind::UnknownNode, "",
                                 fmt::format("unsupported schema_version {}", project.schema_version)});
  Hierarchy shape = skeleton(project);
  for (const auto& j : project.judgments)
    if (!shape.has_node(j.node_id))
      report.violations.push_back({Violation::Kind::UnknownNode, j.node_id,
                                   fmt::format("judgment references unknown node '{}'", j.node_id)});
  if (!report.ok()) return report;

  Hierarchy h;
  try {
    h = to_hierarchy(project);
  } catch (const Error& e) {
    report.violations.push_back({Violation::Kind::MatrixMismatch, "", e.what()});
    return report;
  }
  return validate_hierarchy(h);
}

Hierarchy to_hierarchy(const ProjectFile& project) {
  Hierarchy h = skeleton(project);
  std::map<std::string, std::vector<FuzzyComparisonMatrix>> per_node;
  for (const auto& src : project.judgments) {
    if (!h.has_node(src.node_id))
      throw ValidationError(fmt::format("judgment references unknown node '{}'", src.node_id));
    const auto ids = h.compared_ids(src.node_id);
    if (const auto* scores = std::get_if<ScoreUpper>(&src.data)) {
      per_node[src.node_id].push_back(matrix_from_scores(ids, {src.expert_id, src.node_id, *scores}));
    } else {
      per_node[src.node_id].push_back(FuzzyComparisonMatrix::from_upper(ids, std::get<TfnUpper>(src.data)));
    }
  }
  for (auto& [id, ms] : per_node)
    h.matrices.emplace(id, ms.size() == 1 ? std::move(ms.front()) : aggregate_experts(ms));
  for (const auto& [id, d] : project.direct_weights) h.direct_weights.emplace(id, d.weights);
  return h;
}

std::string save_project(const ProjectFile& project) {
  if (auto report = validate_project(project); !report.ok()) {
    std::string msg = "refusing to save an invalid project:";
    for (const auto& v : report.violations) msg += "\n  " + v.message;
    throw ValidationError(msg);
  }
  const Hierarchy shape = skeleton(project);
  json root;
  root["schema_version"] = project.schema_version;
  root["goal"] = project.goal;
  root["criteria"] = json::array();
  for (const auto& c : project.criteria) root["criteria"].push_back(to_json(c));
  root["alternatives"] = json::array();
  for (const auto& a : project.alternatives) root["alternatives"].push_back({{"id", a.id}, {"label", a.label}});
  root["judgments"] = json::array();
  for (const auto& j : project.judgments) root["judgments"].push_back(to_json(j, shape.compared_ids(j.node_id).size()));
  root["direct_weights"] = json::object();
  for (const auto& [id, d] : project.direct_weights) {
    json w = json::array();
    for (double v : d.weights) w.push_back(round12(v));
    json entry{{"weights", std::move(w)}};
    if (d.published_cr) entry["published_cr"] = round12(*d.published_cr);
    root["direct_weights"][id] = std::move(entry);
  }
  root["settings"] = {{"defuzz", to_string(project.settings.defuzz)},
                      {"method", to_string(project.settings.method)},
                      {"cr_threshold", round12(project.settings.cr_threshold)},
                      {"sensitivity_factor", round12(project.settings.sensitivity_factor)}};
  return root.dump(2) + "\n";
}

void save_project_file(const ProjectFile& project, const std::filesystem::path& path) {
  const auto text = save_project(project);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write project file '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

bool semantically_equal(const ProjectFile& a, const ProjectFile& b) {
  if (a.schema_version != b.schema_version || a.goal != b.goal) return false;
  if (!same_nodes(a.criteria, b.criteria)) return false;
  if (a.alternatives.size() != b.alternatives.size()) return false;
  for (std::size_t k = 0; k < a.alternatives.size(); ++k)
    if (a.alternatives[k].id != b.alternatives[k].id || a.alternatives[k].label != b.alternatives[k].label) return false;

  if (a.judgments.size() != b.judgments.size()) return false;
  for (std::size_t k = 0; k < a.judgments.size(); ++k) {
    const auto& x = a.judgments[k];
    const auto& y = b.judgments[k];
    if (x.node_id != y.node_id || x.expert_id != y.expert_id || !same_opt(x.published_cr, y.published_cr)) return false;
    if (x.data.index() != y.data.index()) return false;
    if (const auto* s = std::get_if<ScoreUpper>(&x.data)) {
      if (*s != std::get<ScoreUpper>(y.data)) return false;
    } else {
      const auto& tx = std::get<TfnUpper>(x.data);
      const auto& ty = std::get<TfnUpper>(y.data);
      if (tx.size() != ty.size()) return false;
      for (std::size_t t = 0; t < tx.size(); ++t)
        if (!near_rel(tx[t].lower(), ty[t].lower()) || !near_rel(tx[t].middle(), ty[t].middle()) ||
            !near_rel(tx[t].upper(), ty[t].upper()))
          return false;
    }
  }

  if (a.direct_weights.size() != b.direct_weights.size()) return false;
  for (const auto& [id, d] : a.direct_weights) {
    auto it = b.direct_weights.find(id);
    if (it == b.direct_weights.end() || it->second.weights.size() != d.weights.size()) return false;
    if (!same_opt(d.published_cr, it->second.published_cr)) return false;
    for (std::size_t k = 0; k < d.weights.size(); ++k)
      if (!near_rel(d.weights[k], it->second.weights[k])) return false;
  }

  const auto& s = a.settings;
  const auto& t = b.settings;
  return s.defuzz == t.defuzz && s.method == t.method && near_rel(s.cr_threshold, t.cr_threshold) &&
         near_rel(s.sensitivity_factor, t.sensitivity_factor);
}

Fixture load_fixture(const std::filesystem::path& dir, std::string_view stem) {
  Fixture f;
  f.project = load_project_file(dir / (std::string(stem) + ".json"));
  const auto exp_path = dir / (std::string(stem) + ".expected.json");
  std::ifstream in(exp_path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open fixture expectations '{}'", exp_path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", exp_path.string(), e.what()), 0, 0);
  }
  f.name = j.at("name").get<std::string>();
  auto& e = f.expected;
  for (const auto& [node, entry] : j.at("local_weights").items()) {
    e.local_weights[node] = entry.at("values").get<std::vector<double>>();
    e.sources["local_weights." + node] = entry.at("source").get<std::string>();
  }
  for (const auto& [node, entry] : j.at("criterion_scores").items()) {
    e.criterion_scores[node] = entry.at("values").get<std::vector<double>>();
    e.sources["criterion_scores." + node] = entry.at("source").get<std::string>();
  }
  e.global_scores = j.at("global_scores").at("values").get<std::vector<double>>();
  e.sources["global_scores"] = j.at("global_scores").at("source").get<std::string>();
  e.ranking = j.at("ranking").at("order").get<std::vector<std::string>>();
  e.sources["ranking"] = j.at("ranking").at("source").get<std::string>();
  if (j.contains("published_cr"))
    for (const auto& [node, v] : j["published_cr"].items()) e.published_cr[node] = v.get<double>();
  return f;
}

} // namespace fahp
