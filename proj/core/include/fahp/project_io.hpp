#pragma once

#include "fahp/hierarchy.hpp"
#include "fahp/sensitivity.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fahp {

inline constexpr int kSchemaVersion = 1;

/// Upper-triangle TFNs, row-major over i < j.
using TfnUpper = std::vector<Tfn>;
/// Complete set of (i < j) signed scores.
using ScoreUpper = std::vector<PairJudgment>;

/// One expert's (or one aggregated) matrix for a node.
struct JudgmentSource {
  std::string node_id;
  std::string expert_id;
  std::variant<ScoreUpper, TfnUpper> data;
  /// Provenance only; never used as a computation input.
  std::optional<double> published_cr;
};

struct DirectWeights {
  std::vector<double> weights;
  std::optional<double> published_cr;
};

struct Settings {
  DefuzzMethod defuzz = DefuzzMethod::Middle;
  DerivationMethod method = DerivationMethod::GmMiddle;
  double cr_threshold = kDefaultCrThreshold;
  double sensitivity_factor = kDefaultBoostFactor;
};

struct ProjectFile {
  int schema_version = kSchemaVersion;
  std::string goal;
  std::vector<CriterionNode> criteria;
  std::vector<Alternative> alternatives;
  std::vector<JudgmentSource> judgments;
  std::map<std::string, DirectWeights> direct_weights;
  Settings settings;
};

/// Parses and validates. ParseError carries 1-based line/column; unknown
/// schema versions raise VersionError; everything else ValidationError with
/// the offending field path or node id in the message.
ProjectFile load_project(std::string_view text);
ProjectFile load_project(std::istream& in);
/// IoError if the file cannot be read.
ProjectFile load_project_file(const std::filesystem::path& path);

/// Parses one judgment body ({"scores": rows} | {"pairs": [[i, j, score]...]} |
/// {"tfn": rows}, optional "expert") for `node_id`. Incomplete score sets
/// raise IncompleteMatrixError; unknown nodes or item ids ValidationError.
JudgmentSource parse_judgment(std::string_view text, const std::string& node_id, const ProjectFile& project);

/// Validates, then serializes to JSON with at most 12 significant digits.
std::string save_project(const ProjectFile& project);
void save_project_file(const ProjectFile& project, const std::filesystem::path& path);

/// Structural checks (ids, judgment sources, matrix shapes) without
/// throwing. Matrices that cannot be built are reported as violations.
ValidationReport validate_project(const ProjectFile& project);

/// Builds matrices (aggregating multiple experts per node) and the
/// direct-weight table. Throws ValidationError if the project is invalid.
Hierarchy to_hierarchy(const ProjectFile& project);

/// Equal ids, labels, tags, scores and settings; reals compared to a
/// relative 1e-11 (the 12-digit serialization bound).
bool semantically_equal(const ProjectFile& a, const ProjectFile& b);

/// Published reference values shipped next to a fixture project, each with
/// the table it came from.
struct PublishedExpectations {
  std::map<std::string, std::vector<double>> local_weights;
  std::map<std::string, std::vector<double>> criterion_scores;
  std::vector<double> global_scores;
  std::vector<std::string> ranking;
  std::map<std::string, double> published_cr;
  std::map<std::string, std::string> sources;
};

struct Fixture {
  std::string name;
  ProjectFile project;
  PublishedExpectations expected;
};

/// Loads `<dir>/<stem>.json` and `<dir>/<stem>.expected.json`.
Fixture load_fixture(const std::filesystem::path& dir, std::string_view stem = "turkiye");

} // namespace fahp
