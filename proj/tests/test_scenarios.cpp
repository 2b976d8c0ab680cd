#include <catch_amalgamated.hpp>

#include "cbd/contextuality.hpp"
#include "cbd/scenarios.hpp"
#include "cbd/system_io.hpp"
#include "fixtures.hpp"

using namespace cbd;
using fixtures::R;

namespace {

Rational expectation(const Bunch& b, const std::string& content) { return 2 * marginal(b, content)["+1"] - 1; }

}  // namespace

TEST_CASE("double-slit encodes the four hit probabilities") {
  System s = make_double_slit(0, R("1/4"), R("1/4"), R("1/3"));
  CHECK(s.contexts().size() == 4);
  CHECK(marginal(s.bunch_of("c1"), "hit")["+1"] == 0);
  CHECK(marginal(s.bunch_of("c4"), "hit")["+1"] == R("1/3"));
  CHECK_FALSE(s.contexts()[0].label.empty());
  CHECK_THROWS_AS(make_double_slit(0, R("1/4"), R("-1/4"), R("1/3")), std::invalid_argument);
  CHECK_THROWS_AS(make_double_slit(0, R("1/4"), R("1/4"), R("4/3")), std::invalid_argument);
}

TEST_CASE("additive double-slit has zero residual and is noncontextual") {
  CHECK(feynman_residual(R("1/4"), R("1/4"), R("1/2")) == 0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    System s = sample_random_system(SingleContentShape{4}, 8, seed);
    CHECK(decide_noncontextuality(s, Mode::Extended).noncontextual);
  }
}

TEST_CASE("PR box cells are 0 or 1/2") {
  System s = make_cyclic4(Cyclic4Params::consistent({1, 1, 1, -1}, 0, 0, 0, 0));
  for (const auto& b : s.bunches())
    for (Eigen::Index i = 0; i < b.pmf().size(); ++i) CHECK((b.pmf()[i] == 0 || b.pmf()[i] == R("1/2")));
  CHECK(s.bunch_of("c4").probability(std::vector<std::size_t>{0, 1}) == R("1/2"));
}

TEST_CASE("independent uniform cyclic-4 is a product and noncontextual") {
  System s = make_cyclic4(Cyclic4Params::consistent({0, 0, 0, 0}, 0, 0, 0, 0));
  for (const auto& b : s.bunches())
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(b.pmf()[i] == R("1/4"));
  CHECK(decide_noncontextuality(s, Mode::Strict).noncontextual);
}

TEST_CASE("cyclic-4 marginals read back from the bunches") {
  Cyclic4Params p{{R("1/2"), R("1/4"), 0, R("-1/2")},
                  {R("1/5"), 0, R("1/3"), R("-1/3"), 0, R("1/4"), R("-1/4"), R("1/2")}};
  System s = make_cyclic4(p);
  const char* pairs[4][2] = {{"A1", "B1"}, {"B1", "A2"}, {"A2", "B2"}, {"B2", "A1"}};
  for (int k = 0; k < 4; ++k) {
    const Bunch& b = s.bunch_of("c" + std::to_string(k + 1));
    CHECK(b.members()[0].id == pairs[k][0]);
    CHECK(expectation(b, pairs[k][0]) == p.marginals[2 * k]);
    CHECK(expectation(b, pairs[k][1]) == p.marginals[2 * k + 1]);
    Rational e = b.pmf()[0] - b.pmf()[1] - b.pmf()[2] + b.pmf()[3];
    CHECK(e == p.correlations[k]);
  }
}

TEST_CASE("invalid correlation and marginal combinations are rejected") {
  CHECK_THROWS_AS(make_cyclic4(Cyclic4Params::consistent({1, 1, 1, -1}, R("1/2"), 0, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(make_cyclic4(Cyclic4Params::consistent({R("3/2"), 0, 0, 0}, 0, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("three-quarters cyclic-4 is consistent and strict-contextual") {
  System s = make_cyclic4(Cyclic4Params::consistent({R("3/4"), R("3/4"), R("3/4"), R("-3/4")}, 0, 0, 0, 0));
  CHECK(is_consistently_connected(s).consistent);
  CHECK_FALSE(decide_noncontextuality(s, Mode::Strict).noncontextual);
}

TEST_CASE("Griffiths layout and pmf validation") {
  BinaryPmf uniform = BinaryPmf::Constant(R("1/4"));
  System s = make_griffiths(uniform, uniform);
  CHECK(s.bunch_of("c1").members()[1].id == "q2");
  CHECK(s.bunch_of("c2").members()[0].id == "q2");
  Verdict v = decide_noncontextuality(s, Mode::Strict);
  REQUIRE(v.witness);
  CHECK(verify_witness(s, *v.witness, v.pair_targets));
  BinaryPmf bad = BinaryPmf::Constant(R("1/3"));
  CHECK_THROWS_AS(make_griffiths(bad, uniform), SystemError);
}

TEST_CASE("sampler is deterministic per seed") {
  for (SystemShape shape : {SystemShape{Cyclic4Shape{}}, SystemShape{Cyclic4Shape{true}}, SystemShape{GriffithsShape{}},
                            SystemShape{SingleContentShape{3}}}) {
    CHECK(sample_random_system(shape, 8, 42) == sample_random_system(shape, 8, 42));
    bool differs = false;
    for (std::uint64_t seed = 1; seed < 6 && !differs; ++seed)
      differs = !(sample_random_system(shape, 8, seed) == sample_random_system(shape, 8, 0));
    CHECK(differs);
  }
}

TEST_CASE("sampled probabilities respect the denominator bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (SystemShape shape : {SystemShape{Cyclic4Shape{}}, SystemShape{GriffithsShape{}}}) {
      System s = sample_random_system(shape, 8, seed);
      for (const auto& b : s.bunches())
        for (Eigen::Index i = 0; i < b.pmf().size(); ++i) CHECK(denominator(b.pmf()[i]) <= 8);
    }
    CHECK(is_consistently_connected(sample_random_system(Cyclic4Shape{true}, 8, seed)).consistent);
  }
  CHECK_THROWS_AS(sample_random_system(GriffithsShape{}, 1, 0), std::invalid_argument);
}
