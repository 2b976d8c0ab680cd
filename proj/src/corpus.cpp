#include "cbd/corpus.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cbd/report.hpp"
#include "cbd/system_io.hpp"

namespace cbd {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

CorpusExpectation parse_expectation(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto space = body.find_first_of(" \t");
    if (space == std::string::npos) throw std::invalid_argument("expectation line without value: '" + body + "'");
    fields[body.substr(0, space)] = trim(body.substr(space + 1));
  }
  for (const char* key : {"mode", "verdict", "degree", "provenance"})
    if (!fields.count(key)) throw std::invalid_argument(std::string("expectation is missing '") + key + "'");

  CorpusExpectation e;
  if (fields["mode"] == "strict") e.mode = Mode::Strict;
  else if (fields["mode"] == "extended") e.mode = Mode::Extended;
  else throw std::invalid_argument("unknown mode '" + fields["mode"] + "'");
  if (fields["verdict"] == "noncontextual") e.noncontextual = true;
  else if (fields["verdict"] == "contextual") e.noncontextual = false;
  else throw std::invalid_argument("unknown verdict '" + fields["verdict"] + "'");
  e.degree = parse_rational(fields["degree"]);
  e.provenance = fields["provenance"];
  return e;
}

std::vector<CorpusResult> corpus_check(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("corpus directory '" + dir.string() + "' not found");

  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension();
    if (ext == ".system" || ext == ".expected") names.insert(entry.path().stem().string());
  }

  std::vector<CorpusResult> results;
  for (const auto& name : names) {
    CorpusResult result{name, false, ""};
    const fs::path system_path = dir / (name + ".system");
    const fs::path expected_path = dir / (name + ".expected");
    if (!fs::exists(system_path) || !fs::exists(expected_path)) {
      result.detail = "missing file " + (fs::exists(system_path) ? expected_path : system_path).string();
      results.push_back(std::move(result));
      continue;
    }
    try {
      CorpusExpectation expected = parse_expectation(slurp(expected_path));
      std::string text = slurp(system_path);
      System system = parse_system(text);
      if (parse_system(serialize_system(system)) != system ||
          serialize_system(parse_system(serialize_system(system))) != serialize_system(system))
        throw std::runtime_error("parse/serialize round trip is not the identity");

      AnalysisRequest request;
      request.mode = expected.mode;
      request.oracle = true;
      Report report = analyze(system, system_path.string(), request);
      std::ostringstream detail;
      if (report.error) {
        detail << "analysis error: " << *report.error;
      } else {
        if (report.verdict.noncontextual != expected.noncontextual)
          detail << "verdict " << (report.verdict.noncontextual ? "noncontextual" : "contextual") << ", expected "
                 << (expected.noncontextual ? "noncontextual" : "contextual") << "; ";
        if (report.verdict.degree != expected.degree)
          detail << "degree " << to_string(report.verdict.degree) << ", expected " << to_string(expected.degree) << "; ";
        if (!report.oracle || !report.oracle->agree) detail << "oracle disagreement; ";
      }
      result.detail = detail.str();
      result.passed = result.detail.empty();
      if (result.passed)
        result.detail = std::string(expected.noncontextual ? "noncontextual" : "contextual") + ", degree " +
                        to_string(expected.degree) + " [" + expected.provenance + "]";
    } catch (const std::exception& e) {
      result.detail = e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace cbd
