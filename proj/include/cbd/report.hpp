#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbd/contextuality.hpp"

namespace cbd {

/// Exit codes shared by the CLI and the corpus checker.
enum ExitCode : int {
  kNoncontextual = 0,
  kContextual = 1,
  kInputError = 2,
  kSizeError = 3,
};

struct AnalysisRequest {
  Mode mode = Mode::Extended;
  bool degree_detail = false;
  bool witness = false;
  bool oracle = false;
  bool timing = false;
  std::size_t max_assignments = kDefaultMaxAssignments;
};

struct OracleCheck {
  bool agree = false;
  bool noncontextual = false;
  Rational degree;
  std::string note;  // set when the oracle could not run
};

struct Report {
  std::string source;
  AnalysisRequest request;
  int exit_code = kNoncontextual;
  std::optional<std::string> error;  // input or size error; nothing below is set

  std::vector<std::string> contents;
  std::vector<std::string> contexts;
  std::size_t bunch_count = 0;
  ConnectednessReport connectedness;
  Verdict verdict;
  std::optional<DegreeDetail> degree_detail;
  std::optional<OracleCheck> oracle;
  std::optional<double> elapsed_ms;
};

/// Run the requested analyses on one system.
Report analyze(const System& system, std::string source, const AnalysisRequest& request);

/// Parse `text` (a system file) and analyze it, capturing errors in the report.
Report analyze_text(std::string_view text, std::string source, const AnalysisRequest& request);

/// Read and analyze a file; an unreadable file becomes an input error.
Report analyze_file(const std::string& path, const AnalysisRequest& request);

/// Line-oriented rendering. Same values as to_json.
std::string render_text(const Report& report);
nlohmann::ordered_json to_json(const Report& report);

}  // namespace cbd
