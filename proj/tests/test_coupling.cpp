#include <catch_amalgamated.hpp>

#include "cbd/contextuality.hpp"
#include "cbd/coupling.hpp"
#include "cbd/oracle.hpp"
#include "cbd/scenarios.hpp"
#include "cbd/simplex.hpp"
#include "cbd/system_io.hpp"
#include "fixtures.hpp"

using namespace cbd;
using fixtures::R;

namespace {

System bernoulli_pair(const Rational& p, const Rational& q) {
  Content x{"x", {"+1", "-1"}};
  Vector<Rational> a(2), b(2);
  a << p, 1 - p;
  b << q, 1 - q;
  return System({x}, {{"c1", ""}, {"c2", ""}}, {Bunch("c1", {x}, a), Bunch("c2", {x}, b)});
}

LpStatus pair_status(const Rational& p, const Rational& q, const Rational& value) {
  System s = bernoulli_pair(p, q);
  auto program = add_equality_probability_constraint(build_coupling_lp(s), connections_of(s)[0], "c1", "c2", value);
  auto simplex = simplex_solve(program.lp);
  CHECK(brute_force_feasible(program.lp).status == simplex.status);
  return simplex.status;
}

}  // namespace

TEST_CASE("cyclic-4 program size") {
  System s = make_cyclic4(Cyclic4Params::consistent({0, 0, 0, 0}, 0, 0, 0, 0));
  CouplingProgram p = build_coupling_lp(s);
  CHECK(p.space.size() == 256);
  CHECK(p.lp.unknowns() == 256);
  CHECK(p.lp.constraints() == 1 + 16);
  CHECK(p.lp.row_labels.front() == "total mass");
}

TEST_CASE("point-mass single variable forces the witness") {
  Content x{"x", {"+1", "-1"}};
  Vector<Rational> pmf(2);
  pmf << 1, 0;
  System s({x}, {{"c", ""}}, {Bunch("c", {x}, pmf)});
  CouplingProgram p = build_coupling_lp(s);
  CHECK(p.lp.unknowns() == 2);
  auto out = simplex_solve(p.lp);
  REQUIRE(out.feasible());
  CHECK((*out.witness)[0] == 1);
  CHECK((*out.witness)[1] == 0);
}

TEST_CASE("Griffiths program size") {
  CouplingProgram p = build_coupling_lp(parse_system(fixtures::kGriffiths));
  CHECK(p.lp.unknowns() == 16);
  CHECK(p.lp.constraints() == 1 + 4 + 4);
}

TEST_CASE("size cap is an error") {
  System s = make_cyclic4(Cyclic4Params::consistent({0, 0, 0, 0}, 0, 0, 0, 0));
  CHECK_THROWS_AS(build_coupling_lp(s, 255), SizeCapExceeded);
  CHECK_NOTHROW(build_coupling_lp(s, 256));
  System big = sample_random_system(SingleContentShape{21}, 4, 1);
  CHECK_THROWS_AS(build_coupling_lp(big), SizeCapExceeded);
}

TEST_CASE("the bare coupling program is always feasible") {
  for (std::uint64_t seed = 0; seed < 15; ++seed)
    for (SystemShape shape : {SystemShape{Cyclic4Shape{}}, SystemShape{GriffithsShape{}},
                              SystemShape{SingleContentShape{4}}}) {
      CouplingProgram p = build_coupling_lp(sample_random_system(shape, 8, seed));
      auto out = simplex_solve(p.lp);
      REQUIRE(out.feasible());
      CHECK(satisfies(p.lp, *out.witness));
    }
}

TEST_CASE("equality value 1 identifies the pair") {
  System s = bernoulli_pair(R("1/3"), R("1/3"));
  auto p = add_equality_probability_constraint(build_coupling_lp(s), connections_of(s)[0], "c1", "c2", 1);
  auto out = simplex_solve(p.lp);
  REQUIRE(out.feasible());
  for (std::size_t a = 0; a < p.space.size(); ++a)
    if (p.space.digit(a, 0) != p.space.digit(a, 1)) CHECK((*out.witness)[static_cast<Eigen::Index>(a)] == 0);
  CHECK(pair_status(R("1/3"), R("2/5"), 1) == LpStatus::Infeasible);
}

TEST_CASE("equality value 0 forces the pair apart") {
  CHECK(pair_status(R("1/2"), R("1/2"), 0) == LpStatus::Feasible);
  CHECK(pair_status(R("3/5"), R("4/5"), 0) == LpStatus::Infeasible);
}

TEST_CASE("Bernoulli 3/5 and 4/5 reach 4/5 but not 9/10") {
  CHECK(pair_status(R("3/5"), R("4/5"), R("4/5")) == LpStatus::Feasible);
  CHECK(pair_status(R("3/5"), R("4/5"), R("9/10")) == LpStatus::Infeasible);
}

TEST_CASE("constraint arguments are validated") {
  System s = bernoulli_pair(R("1/2"), R("1/2"));
  auto conn = connections_of(s)[0];
  CHECK_THROWS_AS(add_equality_probability_constraint(build_coupling_lp(s), conn, "c1", "c9", 1), std::invalid_argument);
  CHECK_THROWS_AS(add_equality_probability_constraint(build_coupling_lp(s), conn, "c1", "c2", R("3/2")),
                  std::invalid_argument);
}

TEST_CASE("assignments decode in label order") {
  System s = parse_system(fixtures::kGriffiths);
  CouplingSpace space(s);
  REQUIRE(space.labels().size() == 4);
  CHECK(space.labels()[0].content == "q1");
  CHECK(space.describe(0) == std::vector<std::string>{"+1", "+1", "+1", "+1"});
  CHECK(space.describe(space.size() - 1) == std::vector<std::string>{"-1", "-1", "-1", "-1"});
}
