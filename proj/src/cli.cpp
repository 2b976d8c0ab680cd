#include "cbd/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cbd/corpus.hpp"
#include "cbd/report.hpp"
#include "cbd/scenarios.hpp"
#include "cbd/simplex.hpp"
#include "cbd/system_io.hpp"

namespace cbd {

namespace {

constexpr const char* kAssignmentEnv = "CBD_MAX_ASSIGNMENTS";

struct AnalysisFlags {
  std::string mode = "extended";
  bool degree = false;
  bool witness = false;
  bool oracle = false;
  bool json = false;
  bool timing = false;
  std::size_t max_assignments = 0;  // 0: environment or default

  AnalysisRequest request() const {
    AnalysisRequest r;
    r.mode = mode == "strict" ? Mode::Strict : Mode::Extended;
    r.degree_detail = degree;
    r.witness = witness;
    r.oracle = oracle;
    r.timing = timing;
    r.max_assignments = kDefaultMaxAssignments;
    if (const char* env = std::getenv(kAssignmentEnv)) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) r.max_assignments = static_cast<std::size_t>(v);
    }
    if (max_assignments > 0) r.max_assignments = max_assignments;
    return r;
  }
};

void add_analysis_flags(CLI::App* app, AnalysisFlags& flags) {
  app->add_option("--mode", flags.mode, "strict or extended noncontextuality")
      ->check(CLI::IsMember({"strict", "extended"}))
      ->capture_default_str();
  app->add_flag("--degree", flags.degree, "report the per-pair shortfall behind the degree");
  app->add_flag("--witness", flags.witness, "print the witness coupling (nonzero rows)");
  app->add_flag("--oracle", flags.oracle, "cross-check with the brute-force oracle; exit 3 on disagreement");
  app->add_flag("--json", flags.json, "machine-readable output");
  app->add_flag("--timing", flags.timing, "include elapsed time (output is then not byte-stable)");
  app->add_option("--max-assignments", flags.max_assignments,
                  std::string("cap on global assignments (default 2^20, or $") + kAssignmentEnv + ")");
}

std::vector<Rational> rational_list(const std::string& text, std::size_t expected_a, std::size_t expected_b,
                                    const char* what) {
  std::vector<Rational> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(parse_rational(item));
  if (out.size() != expected_a && out.size() != expected_b)
    throw std::invalid_argument(std::string(what) + " needs " + std::to_string(expected_a) +
                                (expected_b != expected_a ? " or " + std::to_string(expected_b) : "") + " values");
  return out;
}

BinaryPmf binary_pmf(const std::string& text, const char* what) {
  auto v = rational_list(text, 4, 4, what);
  BinaryPmf pmf;
  pmf << v[0], v[1], v[2], v[3];
  return pmf;
}

int emit(const std::vector<Report>& reports, bool json, std::ostream& out) {
  int code = 0;
  for (const auto& r : reports) code = std::max(code, r.exit_code);
  if (json) {
    if (reports.size() == 1) {
      out << to_json(reports.front()).dump(2) << "\n";
    } else {
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (const auto& r : reports) all.push_back(to_json(r));
      out << all.dump(2) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << render_text(reports[i]);
  }
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality-by-Default analysis with exact coupling linear programs", "cbd"};
  app.require_subcommand(1);

  // analyze
  AnalysisFlags analyze_flags;
  std::vector<std::string> files;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze one or more system files");
  analyze_cmd->add_option("files", files, "system files")->required();
  add_analysis_flags(analyze_cmd, analyze_flags);

  // scenario
  auto* scenario_cmd = app.add_subcommand("scenario", "build and analyze a named scenario");
  scenario_cmd->require_subcommand(1);
  bool emit_system = false;
  AnalysisFlags scenario_flags;

  std::string p1 = "0", p2 = "1/4", p3 = "1/4", p4 = "1/3";
  auto* slit_cmd = scenario_cmd->add_subcommand("double-slit", "one binary content in four slit contexts");
  slit_cmd->add_option("--p1", p1, "Pr[hit] with both slits closed")->capture_default_str();
  slit_cmd->add_option("--p2", p2, "Pr[hit] with only the left slit open")->capture_default_str();
  slit_cmd->add_option("--p3", p3, "Pr[hit] with only the right slit open")->capture_default_str();
  slit_cmd->add_option("--p4", p4, "Pr[hit] with both slits open")->capture_default_str();

  std::string correlations = "0,0,0,0", marginals = "0,0,0,0";
  auto* cyclic_cmd = scenario_cmd->add_subcommand("cyclic4", "cyclic rank-4 (CHSH) system in expectation form");
  cyclic_cmd->add_option("--correlations", correlations, "e11,e12,e22,e21")->capture_default_str();
  cyclic_cmd->add_option("--marginals", marginals,
                         "4 values (A1,B1,A2,B2, consistent) or 8 values in pair order")
      ->capture_default_str();

  std::string b1 = "1/4,1/4,1/4,1/4", b2 = "1/4,1/4,1/4,1/4";
  auto* griffiths_cmd = scenario_cmd->add_subcommand("griffiths", "two contexts sharing content q2");
  griffiths_cmd->add_option("--b1", b1, "pmf of (q1,q2): p++,p+-,p-+,p--")->capture_default_str();
  griffiths_cmd->add_option("--b2", b2, "pmf of (q2,q3): p++,p+-,p-+,p--")->capture_default_str();

  std::string shape = "cyclic4";
  std::size_t contexts = 4;
  unsigned denominator = 8;
  std::uint64_t seed = 0;
  auto* random_cmd = scenario_cmd->add_subcommand("random", "seeded random system");
  random_cmd->add_option("--shape", shape, "cyclic4, cyclic4-consistent, griffiths or single-content")
      ->check(CLI::IsMember({"cyclic4", "cyclic4-consistent", "griffiths", "single-content"}))
      ->capture_default_str();
  random_cmd->add_option("--contexts", contexts, "contexts for single-content")->capture_default_str();
  random_cmd->add_option("--denominator", denominator, "largest denominator")->capture_default_str();
  random_cmd->add_option("--seed", seed, "generator seed")->capture_default_str();

  for (auto* sub : {slit_cmd, cyclic_cmd, griffiths_cmd, random_cmd}) {
    add_analysis_flags(sub, scenario_flags);
    sub->add_flag("--emit-system", emit_system, "print the system file instead of analyzing it");
  }

  // residual
  std::string r1 = "0", r2, r3, r4;
  auto* residual_cmd = app.add_subcommand("residual", "Feynman additivity residual p4 - (p2 + p3) and the CbD verdict");
  residual_cmd->add_option("--p1", r1, "Pr[hit] with both slits closed")->capture_default_str();
  residual_cmd->add_option("--p2", r2)->required();
  residual_cmd->add_option("--p3", r3)->required();
  residual_cmd->add_option("--p4", r4)->required();
  AnalysisFlags residual_flags;
  add_analysis_flags(residual_cmd, residual_flags);

  // corpus
  std::string corpus_dir;
  auto* corpus_cmd = app.add_subcommand("corpus", "check every corpus entry against its expectations");
  corpus_cmd->add_option("dir", corpus_dir, "corpus directory")->required();

  // format
  std::string format_file;
  auto* format_cmd = app.add_subcommand("format", "print the canonical form of a system file");
  format_cmd->add_option("file", format_file)->required();

  // dump-lp
  std::string dump_file, dump_mode = "extended";
  std::size_t dump_cap = 0;
  auto* dump_cmd = app.add_subcommand("dump-lp", "print the decision LP of a system file");
  dump_cmd->add_option("file", dump_file)->required();
  dump_cmd->add_option("--mode", dump_mode)->check(CLI::IsMember({"strict", "extended"}))->capture_default_str();
  dump_cmd->add_option("--max-assignments", dump_cap);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (analyze_cmd->parsed()) {
      const AnalysisRequest request = analyze_flags.request();
      std::vector<std::future<Report>> pending;
      for (const auto& f : files)
        pending.push_back(std::async(std::launch::async, [f, request] { return analyze_file(f, request); }));
      std::vector<Report> reports;
      for (auto& p : pending) reports.push_back(p.get());
      return emit(reports, analyze_flags.json, out);
    }

    if (scenario_cmd->parsed()) {
      std::string name;
      std::optional<System> system;
      try {
        if (slit_cmd->parsed()) {
          name = "scenario double-slit";
          system = make_double_slit(parse_rational(p1), parse_rational(p2), parse_rational(p3), parse_rational(p4));
        } else if (cyclic_cmd->parsed()) {
          name = "scenario cyclic4";
          auto e = rational_list(correlations, 4, 4, "--correlations");
          auto m = rational_list(marginals, 4, 8, "--marginals");
          Cyclic4Params params = m.size() == 4
                                     ? Cyclic4Params::consistent({e[0], e[1], e[2], e[3]}, m[0], m[1], m[2], m[3])
                                     : Cyclic4Params{{e[0], e[1], e[2], e[3]}, {m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7]}};
          system = make_cyclic4(params);
        } else if (griffiths_cmd->parsed()) {
          name = "scenario griffiths";
          system = make_griffiths(binary_pmf(b1, "--b1"), binary_pmf(b2, "--b2"));
        } else {
          name = "scenario random " + shape + " seed " + std::to_string(seed);
          SystemShape s = shape == "griffiths"        ? SystemShape{GriffithsShape{}}
                          : shape == "single-content" ? SystemShape{SingleContentShape{contexts}}
                                                      : SystemShape{Cyclic4Shape{shape == "cyclic4-consistent"}};
          system = sample_random_system(s, denominator, seed);
        }
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
      } catch (const SystemError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
      }
      if (emit_system) {
        out << serialize_system(*system);
        return 0;
      }
      return emit({analyze(*system, name, scenario_flags.request())}, scenario_flags.json, out);
    }

    if (residual_cmd->parsed()) {
      Rational q1, q2, q3, q4;
      try {
        q1 = parse_rational(r1);
        q2 = parse_rational(r2);
        q3 = parse_rational(r3);
        q4 = parse_rational(r4);
        (void)feynman_residual(q2, q3, q4);
        (void)make_double_slit(q1, q2, q3, q4);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
      }
      Rational residual = feynman_residual(q2, q3, q4);
      Report report = analyze(make_double_slit(q1, q2, q3, q4), "scenario double-slit", residual_flags.request());
      if (residual_flags.json) {
        auto j = to_json(report);
        j["feynman_residual"] = to_string(residual);
        out << j.dump(2) << "\n";
      } else {
        out << "feynman residual: " << to_string(residual) << " (p4 - (p2 + p3); not a contextuality criterion)\n";
        out << render_text(report);
      }
      return report.exit_code;
    }

    if (corpus_cmd->parsed()) {
      std::vector<CorpusResult> results;
      try {
        results = corpus_check(corpus_dir);
      } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
      }
      std::size_t failures = 0;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        failures += r.passed ? 0 : 1;
      }
      out << "corpus: " << results.size() << " entries, " << failures << " failures\n";
      return failures == 0 ? 0 : 1;
    }

    if (format_cmd->parsed()) {
      out << serialize_system(parse_system(read_file(format_file)));
      return 0;
    }

    if (dump_cmd->parsed()) {
      System system = parse_system(read_file(dump_file));
      Mode mode = dump_mode == "strict" ? Mode::Strict : Mode::Extended;
      CouplingProgram program = build_coupling_lp(system, dump_cap > 0 ? dump_cap : kDefaultMaxAssignments);
      auto conns = connections_of(system);
      for (const auto& t : pair_targets(system, mode)) {
        auto conn = std::find_if(conns.begin(), conns.end(), [&](const Connection& c) { return c.content == t.content; });
        program = add_equality_probability_constraint(std::move(program), *conn, t.context_a, t.context_b, t.target);
      }
      out << dump(program.lp);
      return 0;
    }
  } catch (const SizeCapExceeded& e) {
    out << "error: " << e.what() << "\n";
    return kSizeError;
  } catch (const SystemError& e) {
    out << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    out << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cbd
