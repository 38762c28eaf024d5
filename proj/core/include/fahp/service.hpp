#pragma once

#include "fahp/project_io.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

namespace fahp {

/// Single-project HTTP/JSON service for interactive judgment revision.
///
/// Endpoints:
///   GET  /model                 hierarchy, alternatives, settings, judgments, scale
///   PUT  /judgments/{node}      replace a node's judgments; returns its consistency report
///   GET  /weights[?override=true]
///   GET  /ranking[?override=true]
///   POST /sensitivity           {"factor": real}
///   POST /save                  write the project back to its file
///
/// Mutations take an exclusive lock; reads share. Every successful PUT bumps
/// a generation counter that invalidates the result cache.
class Service {
public:
  struct Request {
    std::string method;
    std::string path;
    std::string body;
    std::map<std::string, std::string> query;
  };

  struct Response {
    int status = 200;
    std::string body;
  };

  explicit Service(ProjectFile project, std::filesystem::path project_path = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Transport-independent dispatch; never throws.
  Response handle(const Request& request);

  /// Binds the listener. Port 0 picks a free port; returns the bound port
  /// or -1 on failure.
  int bind(const std::string& host = "127.0.0.1", int port = 8080);
  /// Blocks serving requests until stop().
  bool run();
  void stop();

  bool dirty() const;
  std::uint64_t generation() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace fahp
