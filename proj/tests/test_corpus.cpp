#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "cbd/corpus.hpp"

namespace fs = std::filesystem;
using namespace cbd;

namespace {

fs::path copy_corpus(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cbd_corpus_" + name);
  fs::remove_all(dir);
  fs::copy(CBD_CORPUS_DIR, dir);
  return dir;
}

std::size_t failures(const std::vector<CorpusResult>& results) {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; }));
}

}  // namespace

TEST_CASE("the shipped corpus passes") {
  auto results = corpus_check(CBD_CORPUS_DIR);
  CHECK(results.size() >= 10);
  for (const auto& r : results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("PR box entry is contextual with degree 1") {
  std::ifstream in(std::string(CBD_CORPUS_DIR) + "/pr_box_strict.expected");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CorpusExpectation e = parse_expectation(text);
  CHECK(e.mode == Mode::Strict);
  CHECK_FALSE(e.noncontextual);
  CHECK(e.degree == 1);
}

TEST_CASE("a corrupted expectation is exactly one failure") {
  fs::path dir = copy_corpus("corrupt");
  std::ofstream(dir / "pr_box_extended.expected") << "mode extended\nverdict contextual\ndegree 1/3\nprovenance test\n";
  auto results = corpus_check(dir);
  REQUIRE(failures(results) == 1);
  auto bad = std::find_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  CHECK(bad->name == "pr_box_extended");
  CHECK(bad->detail.find("degree 1, expected 1/3") != std::string::npos);
}

TEST_CASE("a missing half of a pair is a failure") {
  fs::path dir = copy_corpus("missing");
  fs::remove(dir / "vacuous.expected");
  auto results = corpus_check(dir);
  CHECK(failures(results) == 1);
}

TEST_CASE("expectation files are validated") {
  CHECK_THROWS_AS(parse_expectation("mode extended\nverdict contextual\ndegree 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_expectation("mode lax\nverdict contextual\ndegree 1\nprovenance x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_expectation("mode strict\nverdict maybe\ndegree 1\nprovenance x\n"), std::invalid_argument);
  CorpusExpectation e = parse_expectation("# note\nmode strict\nverdict noncontextual\ndegree 0\nprovenance a b c\n");
  CHECK(e.provenance == "a b c");
}

TEST_CASE("a missing corpus directory is an error") {
  CHECK_THROWS_AS(corpus_check("/no/such/corpus"), std::runtime_error);
}
