#include "cbd/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "cbd/system_io.hpp"

namespace cbd {

namespace {

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string pair_name(const std::string& content, const std::string& a, const std::string& b) {
  return content + " " + a + "|" + b;
}

Report failed(Report report, int code, std::string message) {
  report.exit_code = code;
  report.error = std::move(message);
  return report;
}

}  // namespace

Report analyze(const System& system, std::string source, const AnalysisRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.source = std::move(source);
  report.request = request;
  for (const auto& c : system.contents()) report.contents.push_back(c.id);
  for (const auto& c : system.contexts()) report.contexts.push_back(c.id);
  report.bunch_count = system.bunches().size();
  report.connectedness = is_consistently_connected(system);

  AnalysisOptions options;
  options.max_assignments = request.max_assignments;
  try {
    report.verdict = decide_noncontextuality(system, request.mode, options);
    if (report.verdict.witness && !verify_witness(system, *report.verdict.witness, report.verdict.pair_targets))
      throw InternalInconsistency("simplex witness failed exact verification");
    if (request.degree_detail) report.degree_detail = contextuality_degree_detail(system, options);
  } catch (const InconsistentSystemError& e) {
    return failed(std::move(report), kInputError, e.what());
  } catch (const SizeCapExceeded& e) {
    return failed(std::move(report), kSizeError, e.what());
  }
  report.exit_code = report.verdict.noncontextual ? kNoncontextual : kContextual;

  if (request.oracle) {
    OracleCheck check;
    AnalysisOptions oracle_options = options;
    oracle_options.solver = Solver::BruteForce;
    try {
      Verdict other = decide_noncontextuality(system, request.mode, oracle_options);
      check.noncontextual = other.noncontextual;
      check.degree = other.degree;
      check.agree = other.noncontextual == report.verdict.noncontextual && other.degree == report.verdict.degree;
      if (other.witness && !verify_witness(system, *other.witness, other.pair_targets)) {
        check.agree = false;
        check.note = "oracle witness failed exact verification";
      }
    } catch (const OracleScaleExceeded& e) {
      check.note = e.what();
    }
    if (!check.agree) report.exit_code = kSizeError;
    report.oracle = std::move(check);
  }

  if (request.timing)
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Report analyze_text(std::string_view text, std::string source, const AnalysisRequest& request) {
  Report base;
  base.source = source;
  base.request = request;
  try {
    System system = parse_system(text);
    return analyze(system, std::move(source), request);
  } catch (const SystemError& e) {
    return failed(std::move(base), kInputError, e.what());
  }
}

Report analyze_file(const std::string& path, const AnalysisRequest& request) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    Report report;
    report.source = path;
    report.request = request;
    return failed(std::move(report), kInputError, "cannot read file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return analyze_text(buffer.str(), path, request);
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "source: " << r.source << "\n";
  if (r.error) {
    out << "error: " << *r.error << "\n";
    out << "exit: " << r.exit_code << "\n";
    return out.str();
  }
  out << "contents: " << r.contents.size() << " (" << join(r.contents) << ")\n";
  out << "contexts: " << r.contexts.size() << " (" << join(r.contexts) << ")\n";
  out << "bunches: " << r.bunch_count << "\n";
  out << "connectedness: " << (r.connectedness.consistent ? "consistent" : "inconsistent") << "\n";
  for (const auto& p : r.connectedness.pairs)
    out << "  mismatch " << pair_name(p.content, p.context_a, p.context_b) << " = " << to_string(p.mismatch) << "\n";

  const Verdict& v = r.verdict;
  out << "mode: " << to_string(v.mode) << "\n";
  out << "verdict: " << (v.noncontextual ? "noncontextual" : "contextual") << "\n";
  out << "degree: " << to_string(v.degree) << " (total pair-equality shortfall, non-normative)\n";
  for (const auto& t : v.pair_targets)
    out << "  target " << pair_name(t.content, t.context_a, t.context_b) << " = " << to_string(t.target) << "\n";

  if (r.degree_detail) {
    out << "degree detail:\n";
    for (const auto& p : r.degree_detail->pairs)
      out << "  achieved " << pair_name(p.target.content, p.target.context_a, p.target.context_b) << " = "
          << to_string(p.achieved) << " of " << to_string(p.target.target) << "\n";
  }
  if (r.request.witness) {
    if (v.witness) {
      std::vector<std::string> names;
      for (const auto& l : v.witness->labels) names.push_back(l.content + "^" + l.context);
      out << "witness: " << join(names) << "\n";
      for (const auto& row : v.witness->rows) out << "  " << join(row.outcomes) << " : " << to_string(row.probability) << "\n";
    } else {
      out << "witness: none\n";
    }
  }
  if (r.oracle) {
    out << "oracle: " << (r.oracle->agree ? "agree" : "DISAGREE");
    if (r.oracle->note.empty())
      out << " (" << (r.oracle->noncontextual ? "noncontextual" : "contextual") << ", degree "
          << to_string(r.oracle->degree) << ")";
    else
      out << " (" << r.oracle->note << ")";
    out << "\n";
  }
  if (r.elapsed_ms) out << "elapsed_ms: " << *r.elapsed_ms << "\n";
  out << "exit: " << r.exit_code << "\n";
  return out.str();
}

nlohmann::ordered_json to_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["source"] = r.source;
  if (r.error) {
    j["error"] = *r.error;
    j["exit"] = r.exit_code;
    return j;
  }
  j["contents"] = r.contents;
  j["contexts"] = r.contexts;
  j["bunches"] = r.bunch_count;

  ordered_json conn;
  conn["consistent"] = r.connectedness.consistent;
  conn["mismatches"] = ordered_json::array();
  for (const auto& p : r.connectedness.pairs)
    conn["mismatches"].push_back(
        {{"content", p.content}, {"context_a", p.context_a}, {"context_b", p.context_b}, {"mismatch", to_string(p.mismatch)}});
  j["connectedness"] = conn;

  const Verdict& v = r.verdict;
  ordered_json verdict;
  verdict["mode"] = to_string(v.mode);
  verdict["noncontextual"] = v.noncontextual;
  verdict["degree"] = to_string(v.degree);
  verdict["degree_measure"] = "total pair-equality shortfall, non-normative";
  verdict["pair_targets"] = ordered_json::array();
  for (const auto& t : v.pair_targets)
    verdict["pair_targets"].push_back(
        {{"content", t.content}, {"context_a", t.context_a}, {"context_b", t.context_b}, {"target", to_string(t.target)}});
  j["verdict"] = verdict;

  if (r.degree_detail) {
    ordered_json d;
    d["degree"] = to_string(r.degree_detail->degree);
    d["pairs"] = ordered_json::array();
    for (const auto& p : r.degree_detail->pairs)
      d["pairs"].push_back({{"content", p.target.content},
                            {"context_a", p.target.context_a},
                            {"context_b", p.target.context_b},
                            {"target", to_string(p.target.target)},
                            {"achieved", to_string(p.achieved)}});
    j["degree_detail"] = d;
  }
  if (r.request.witness) {
    if (v.witness) {
      ordered_json w;
      w["labels"] = ordered_json::array();
      for (const auto& l : v.witness->labels) w["labels"].push_back({{"content", l.content}, {"context", l.context}});
      w["rows"] = ordered_json::array();
      for (const auto& row : v.witness->rows)
        w["rows"].push_back({{"outcomes", row.outcomes}, {"probability", to_string(row.probability)}});
      j["witness"] = w;
    } else {
      j["witness"] = nullptr;
    }
  }
  if (r.oracle) {
    ordered_json o;
    o["agree"] = r.oracle->agree;
    if (r.oracle->note.empty()) {
      o["noncontextual"] = r.oracle->noncontextual;
      o["degree"] = to_string(r.oracle->degree);
    } else {
      o["note"] = r.oracle->note;
    }
    j["oracle"] = o;
  }
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  j["exit"] = r.exit_code;
  return j;
}

}  // namespace cbd
