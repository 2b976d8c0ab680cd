#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "cbd/scenarios.hpp"
#include "cbd/system_io.hpp"
#include "fixtures.hpp"

using namespace cbd;
using fixtures::R;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_system(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("text parsed without error");
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("double-slit file parses into four singleton bunches") {
  System s = parse_system(fixtures::kDoubleSlit);
  CHECK(s.contents().size() == 1);
  REQUIRE(s.contexts().size() == 4);
  CHECK(s.contexts()[3].label == "both slits open");
  for (const auto& b : s.bunches()) CHECK(b.members().size() == 1);
  CHECK(marginal(s.bunch_of("c3"), "hit")["+1"] == R("1/4"));
}

TEST_CASE("pmf summing to 9/10 is a sum error") {
  ParseError e = parse_failure("content x outcomes a b\ncontext c\nbunch c members x\n  a : 1/2\n  b : 2/5\n");
  CHECK(e.kind() == SystemError::Kind::PmfSum);
  CHECK(e.line() == 3);
  CHECK(e.column() == 7);
  CHECK(std::string(e.what()).find("9/10") != std::string::npos);
}

TEST_CASE("Griffiths layout shares q2 across both contexts") {
  auto conns = connections_of(parse_system(fixtures::kGriffiths));
  auto two = std::count_if(conns.begin(), conns.end(), [](const Connection& c) { return c.variables.size() == 2; });
  CHECK(two == 1);
}

TEST_CASE("parse errors carry line and column") {
  struct Case {
    const char* text;
    SystemError::Kind kind;
    std::size_t line;
    std::size_t column;
  };
  const Case cases[] = {
      {"content x outcomes a b\ncontext c\nbunch c members x\n  q : 1\n", SystemError::Kind::UnknownOutcome, 4, 3},
      {"content x outcomes a b\ncontext c\nbunch c members x x\n", SystemError::Kind::DuplicateLabel, 3, 19},
      {"content x outcomes a b\ncontext c\nbunch c members x\n  a : 1\nbunch c members x\n  a : 1\n",
       SystemError::Kind::DuplicateLabel, 5, 7},
      {"content x outcomes a b\ncontext c\nbunch c members x\n  a : 1/2\n  a : 1/2\n",
       SystemError::Kind::DuplicateDeclaration, 5, 3},
      {"content x outcomes a b\ncontext c\ncontext d\nbunch c members x\n  a : 1\n", SystemError::Kind::MissingBunch,
       3, 9},
      {"content x outcomes a b\ncontext c\nbunch c members y\n  a : 1\n", SystemError::Kind::UnknownContent, 3, 17},
      {"content x outcomes a b\nbunch c members x\n  a : 1\n", SystemError::Kind::UnknownContext, 2, 7},
      {"content x outcomes a\n", SystemError::Kind::InvalidOutcomeSet, 1, 1},
      {"content x outcomes a b\ncontext c\nbunch c members x\n  a : 3/2\n  b : -1/2\n",
       SystemError::Kind::NegativeProbability, 5, 7},
      {"content x outcomes a b\ncontext c\nbunch c members x\n  a : one\n", SystemError::Kind::Syntax, 4, 7},
      {"content x outcomes a b\ncontext c\nbunch c members x\n  a 1\n", SystemError::Kind::Syntax, 4, 5},
      {"  a : 1\n", SystemError::Kind::Syntax, 1, 3},
      {"frobnicate\n", SystemError::Kind::Syntax, 1, 1},
      {"context c \"open\n", SystemError::Kind::Syntax, 1, 11},
      {"# nothing\n", SystemError::Kind::Empty, 1, 1},
  };
  for (const auto& c : cases) {
    INFO(c.text);
    ParseError e = parse_failure(c.text);
    CHECK(e.kind() == c.kind);
    CHECK(e.line() == c.line);
    CHECK(e.column() == c.column);
  }
}

TEST_CASE("comments, blank lines, CRLF and any declaration order are accepted") {
  std::string text =
      "# header\r\nbunch c members x   # trailing\r\n  b : 0.75\r\n\r\n  a : 1/4\r\ncontext c\r\ncontent x outcomes a b\r\n";
  System s = parse_system(text);
  CHECK(marginal(s.bunch_of("c"), "x")["a"] == R("1/4"));
}

TEST_CASE("serialize then parse is the identity") {
  for (const std::string& text : {fixtures::kDoubleSlit, fixtures::kGriffiths}) {
    System s = parse_system(text);
    std::string canonical = serialize_system(s);
    CHECK(parse_system(canonical) == s);
    CHECK(serialize_system(parse_system(canonical)) == canonical);
  }
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    System s = sample_random_system(Cyclic4Shape{false}, 8, seed);
    CHECK(parse_system(serialize_system(s)) == s);
  }
}

TEST_CASE("labels with quotes and backslashes survive the round trip") {
  System s({Content{"x", {"a", "b"}}}, {{"c", "say \"hi\" \\ bye"}},
           {Bunch("c", {Content{"x", {"a", "b"}}}, Vector<Rational>::Constant(2, Rational(1, 2)))});
  CHECK(parse_system(serialize_system(s)) == s);
}

TEST_CASE("empty labels are omitted and zero cells are not written") {
  std::string out = serialize_system(parse_system(fixtures::kGriffiths));
  CHECK(out.find("context c1\n") != std::string::npos);
  CHECK(out.find("\"") == std::string::npos);
  CHECK(out.find(": 0\n") == std::string::npos);
}

TEST_CASE("cyclic-4 serializes as four two-member bunch blocks") {
  System s = make_cyclic4(Cyclic4Params::consistent({R("1"), R("1"), R("1"), R("-1")}, 0, 0, 0, 0));
  std::string out = serialize_system(s);
  std::size_t blocks = 0;
  for (std::size_t pos = 0; (pos = out.find("\nbunch ", pos)) != std::string::npos; ++pos) {
    ++blocks;
    auto end = out.find('\n', pos + 1);
    std::string header = out.substr(pos + 1, end - pos - 1);
    CHECK(std::count(header.begin(), header.end(), ' ') == 4);
  }
  CHECK(blocks == 4);
}

TEST_CASE("permuting declarations and pmf lines leaves the canonical form unchanged") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::string canonical = serialize_system(sample_random_system(Cyclic4Shape{false}, 8, seed));
    // split into top-level blocks: each declaration line plus its indented pmf lines
    std::vector<std::vector<std::string>> blocks;
    std::istringstream in(canonical);
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      if (line.front() == ' ') blocks.back().push_back(line);
      else blocks.push_back({line});
    }
    for (int trial = 0; trial < 3; ++trial) {
      std::shuffle(blocks.begin(), blocks.end(), rng);
      std::string shuffled;
      for (auto& b : blocks) {
        std::shuffle(b.begin() + 1, b.end(), rng);
        for (const auto& l : b) shuffled += l + "\n";
      }
      CHECK(serialize_system(parse_system(shuffled)) == canonical);
    }
  }
}
