#include "fahp/service.hpp"

#include "fahp/error.hpp"
#include "fahp/export.hpp"

#include <httplib.h>

#include <fmt/format.h>
#include <mutex>
#include <optional>
#include <shared_mutex>

namespace fahp {

using nlohmann::json;

namespace {

Service::Response reply(int status, const json& body) { return {status, body.dump()}; }

Service::Response error(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return reply(status, extra);
}

bool flag(const std::map<std::string, std::string>& query, const char* key) {
  auto it = query.find(key);
  return it != query.end() && (it->second == "true" || it->second == "1" || it->second.empty());
}

struct Computed {
  std::uint64_t generation = 0;
  std::map<std::string, ConsistencyReport> consistency;
  DecisionResult result;
};

} // namespace

struct Service::Impl {
  mutable std::shared_mutex mu;
  ProjectFile project;
  std::filesystem::path path;
  bool dirty = false;
  std::uint64_t generation = 0;

  std::mutex cache_mu;
  std::optional<Computed> cache;

  httplib::Server server;

  // Caller holds `mu` (shared or exclusive).
  Computed compute_locked() {
    std::lock_guard lock(cache_mu);
    if (cache && cache->generation == generation) return *cache;
    const auto h = to_hierarchy(project);
    const auto& s = project.settings;
    Computed c;
    c.generation = generation;
    c.consistency = assess_consistency(h, s.defuzz, s.cr_threshold);
    LocalWeightOptions opts{s.method, s.defuzz, s.cr_threshold, true};
    c.result = score_alternatives(h, compute_local_weights(h, opts));
    cache = c;
    return c;
  }

  std::optional<Response> gate(const Computed& c, bool override_cr) const {
    if (override_cr) return std::nullopt;
    for (const auto& [node, r] : c.consistency)
      if (!r.acceptable)
        return error(422,
                     fmt::format("matrix of node '{}' has CR {:.4f}, not below {}; revise it or pass override=true",
                                 node, r.cr, r.threshold),
                     {{"node", node}, {"cr", r.cr}});
    return std::nullopt;
  }

  json consistency_json(const Computed& c, const Hierarchy& h) const {
    json j = json::object();
    for (const auto& [node, r] : c.consistency) j[node] = to_json(r, h.compared_ids(node));
    return j;
  }

  Response get_model() {
    std::shared_lock lock(mu);
    return reply(200, model_json(project));
  }

  Response put_judgments(const std::string& node, const std::string& body) {
    std::unique_lock lock(mu);
    const auto shape = to_hierarchy(project);
    if (!shape.has_node(node)) return error(404, fmt::format("unknown node '{}'", node));
    const auto ids = shape.compared_ids(node);
    if (ids.size() < 2) return error(400, fmt::format("node '{}' compares fewer than two items", node));

    JudgmentSource src;
    try {
      src = parse_judgment(body, node, project);
    } catch (const IncompleteMatrixError& e) {
      json missing = json::array();
      for (const auto& [i, j] : e.missing()) missing.push_back({ids[i], ids[j]});
      return error(409, e.what(), {{"node", node}, {"missing", std::move(missing)}});
    } catch (const Error& e) {
      return error(400, e.what());
    }

    ProjectFile next = project;
    std::erase_if(next.judgments, [&](const JudgmentSource& j) { return j.node_id == node; });
    next.direct_weights.erase(node);
    next.judgments.push_back(std::move(src));
    const auto h = to_hierarchy(next);
    const auto report = assess_matrix(h.matrices.at(node), next.settings.defuzz, next.settings.cr_threshold);

    project = std::move(next);
    dirty = true;
    ++generation;
    json out = to_json(report, ids);
    out["node"] = node;
    return reply(200, out);
  }

  Response get_weights(bool override_cr) {
    std::shared_lock lock(mu);
    const auto c = compute_locked();
    if (auto g = gate(c, override_cr)) return *g;
    const auto h = to_hierarchy(project);
    return reply(200, {{"local_weights", to_json(c.result.local_weights)},
                       {"leaf_global_weights", c.result.leaf_global_weights},
                       {"consistency", consistency_json(c, h)}});
  }

  Response get_ranking(bool override_cr) {
    std::shared_lock lock(mu);
    const auto c = compute_locked();
    if (auto g = gate(c, override_cr)) return *g;
    const auto h = to_hierarchy(project);
    json out = to_json(c.result);
    out["consistency"] = consistency_json(c, h);
    return reply(200, out);
  }

  Response post_sensitivity(const std::string& body, bool override_cr) {
    std::shared_lock lock(mu);
    double factor = project.settings.sensitivity_factor;
    if (!body.empty()) {
      json j = json::parse(body, nullptr, false);
      if (j.is_discarded() || !j.is_object()) return error(400, "body must be a JSON object");
      if (j.contains("factor")) {
        if (!j["factor"].is_number()) return error(400, "factor must be a number");
        factor = j["factor"].get<double>();
      }
    }
    const auto c = compute_locked();
    if (auto g = gate(c, override_cr)) return *g;
    try {
      const auto report = run_scenarios(to_hierarchy(project), c.result, factor);
      json out = to_json(report);
      out["factor"] = factor;
      return reply(200, out);
    } catch (const InfeasibleBoostError& e) {
      return error(422, e.what(), {{"factor", factor}});
    } catch (const DomainError& e) {
      return error(400, e.what());
    }
  }

  Response post_save() {
    std::unique_lock lock(mu);
    if (path.empty()) return error(409, "service was started without a project path");
    save_project_file(project, path);
    dirty = false;
    return reply(200, {{"saved", path.string()}});
  }
};

Service::Service(ProjectFile project, std::filesystem::path project_path) : impl_(std::make_unique<Impl>()) {
  impl_->project = std::move(project);
  impl_->path = std::move(project_path);
}

Service::~Service() { stop(); }

Service::Response Service::handle(const Request& request) {
  const auto& m = request.method;
  const auto& p = request.path;
  const bool override_cr = flag(request.query, "override");
  try {
    if (p == "/model") return m == "GET" ? impl_->get_model() : error(405, "use GET");
    if (p.starts_with("/judgments/")) {
      const auto node = p.substr(std::string_view("/judgments/").size());
      if (node.empty() || node.find('/') != std::string::npos) return error(404, "expected /judgments/{node}");
      return m == "PUT" ? impl_->put_judgments(node, request.body) : error(405, "use PUT");
    }
    if (p == "/weights") return m == "GET" ? impl_->get_weights(override_cr) : error(405, "use GET");
    if (p == "/ranking") return m == "GET" ? impl_->get_ranking(override_cr) : error(405, "use GET");
    if (p == "/sensitivity") return m == "POST" ? impl_->post_sensitivity(request.body, override_cr) : error(405, "use POST");
    if (p == "/save") return m == "POST" ? impl_->post_save() : error(405, "use POST");
    return error(404, fmt::format("no route for {} {}", m, p));
  } catch (const IoError& e) {
    return error(500, e.what());
  } catch (const Error& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

int Service::bind(const std::string& host, int port) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, req.body, {}};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const auto out = handle(r);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  auto& svr = impl_->server;
  svr.Get(".*", forward);
  svr.Put(".*", forward);
  svr.Post(".*", forward);
  svr.Delete(".*", forward);
  if (port == 0) return svr.bind_to_any_port(host);
  return svr.bind_to_port(host, port) ? port : -1;
}

bool Service::run() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool Service::dirty() const {
  std::shared_lock lock(impl_->mu);
  return impl_->dirty;
}

std::uint64_t Service::generation() const {
  std::shared_lock lock(impl_->mu);
  return impl_->generation;
}

} // namespace fahp
