#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "cbd/simplex.hpp"
#include "lp_helpers.hpp"

using namespace cbd;
using fixtures::row;

TEST_CASE("x = 1 is feasible with witness 1") {
  LinearProgram<Rational> lp(1);
  lp.add_equality(row({1}), 1);
  auto out = simplex_solve(lp);
  CHECK(out.status == LpStatus::Feasible);
  REQUIRE(out.witness);
  CHECK((*out.witness)[0] == 1);
  CHECK_FALSE(out.objective_value);
}

TEST_CASE("x + y = 1, x - y = 2 is infeasible") {
  LinearProgram<Rational> lp(2);
  lp.add_equality(row({1, 1}), 1);
  lp.add_equality(row({1, -1}), 2);
  auto out = simplex_solve(lp);
  CHECK(out.status == LpStatus::Infeasible);
  CHECK_FALSE(out.witness);
}

TEST_CASE("maximum equality probability of two fair coins is 1") {
  // unknowns: (+,+) (+,-) (-,+) (-,-)
  LinearProgram<Rational> lp(4);
  lp.add_equality(row({1, 1, 0, 0}), Rational(1, 2));
  lp.add_equality(row({0, 0, 1, 1}), Rational(1, 2));
  lp.add_equality(row({1, 0, 1, 0}), Rational(1, 2));
  lp.add_equality(row({0, 1, 0, 1}), Rational(1, 2));
  lp.objective = row({1, 0, 0, 1});
  auto out = simplex_solve(lp);
  CHECK(out.status == LpStatus::Optimal);
  REQUIRE(out.objective_value);
  CHECK(*out.objective_value == 1);
  CHECK(satisfies(lp, *out.witness));
}

TEST_CASE("redundant and zero rows are handled") {
  LinearProgram<Rational> lp(3);
  lp.add_equality(row({1, 1, 1}), 1);
  lp.add_equality(row({2, 2, 2}), 2);
  lp.add_equality(row({0, 0, 0}), 0);
  lp.add_equality(row({1, 0, 0}), Rational(1, 3));
  auto out = simplex_solve(lp);
  REQUIRE(out.status == LpStatus::Feasible);
  CHECK(satisfies(lp, *out.witness));

  lp.add_equality(row({0, 0, 0}), 1);
  CHECK(simplex_solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("negative right-hand sides are flipped") {
  LinearProgram<Rational> lp(2);
  lp.add_equality(row({-1, -1}), -1);
  lp.add_equality(row({1, -1}), 0);
  auto out = simplex_solve(lp);
  REQUIRE(out.feasible());
  CHECK((*out.witness)[0] == Rational(1, 2));
  CHECK((*out.witness)[1] == Rational(1, 2));
}

TEST_CASE("an unbounded objective is an internal inconsistency") {
  LinearProgram<Rational> lp(2);
  lp.add_equality(row({1, -1}), 0);
  lp.objective = row({1, 1});
  CHECK_THROWS_AS(simplex_solve(lp), InternalInconsistency);
}

TEST_CASE("the solver is generic in the scalar type") {
  LinearProgram<double> lp(2);
  Vector<double> a(2);
  a << 1, 1;
  lp.add_equality(a, 1.0);
  Vector<double> c(2);
  c << 1, 2;
  lp.objective = c;
  auto out = simplex_solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(*out.objective_value == 2.0);
}

TEST_CASE("status is invariant under row and column permutations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto lp = fixtures::random_program(rng, 3, 6, trial % 2 == 0);
    auto base = simplex_solve(lp);

    std::vector<Eigen::Index> rows(lp.constraints()), cols(lp.unknowns());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    LinearProgram<Rational> perm(lp.unknowns());
    for (auto i : rows) {
      Vector<Rational> a(lp.unknowns());
      for (Eigen::Index j = 0; j < lp.unknowns(); ++j) a[j] = lp.equalities(i, cols[j]);
      perm.add_equality(a, lp.rhs[i]);
    }
    if (lp.objective) {
      Vector<Rational> c(lp.unknowns());
      for (Eigen::Index j = 0; j < lp.unknowns(); ++j) c[j] = (*lp.objective)[cols[j]];
      perm.objective = c;
    }
    auto other = simplex_solve(perm);
    CHECK(other.status == base.status);
    CHECK(other.objective_value == base.objective_value);
    if (other.witness) CHECK(satisfies(perm, *other.witness));
  }
}

TEST_CASE("dump uses the documented constraint format") {
  LinearProgram<Rational> lp(2);
  lp.add_equality(row({1, -1}), Rational(1, 2), "first");
  lp.objective = row({0, 3});
  CHECK(dump(lp) == "# unknowns 2, constraints 1\n# first\n1*x0 + -1*x1 = 1/2\nmaximize: 3*x1\n");
}
