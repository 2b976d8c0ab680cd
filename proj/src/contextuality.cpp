#include "cbd/contextuality.hpp"

#include <algorithm>

#include "cbd/simplex.hpp"

namespace cbd {

const char* to_string(Mode mode) { return mode == Mode::Strict ? "strict" : "extended"; }

namespace {

Rational half_l1(const Distribution& a, const Distribution& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.mass.size(); ++i) s += abs(a.mass[i] - b.mass[i]);
  return s / 2;
}

Coupling decode(const CouplingSpace& space, const Vector<Rational>& x) {
  Coupling c{space.labels(), {}};
  for (Eigen::Index a = 0; a < x.size(); ++a)
    if (x[a] != 0) c.rows.push_back({space.describe(static_cast<std::size_t>(a)), x[a]});
  return c;
}

LpOutcome<Rational> feasibility(const LinearProgram<Rational>& lp, const AnalysisOptions& options) {
  return options.solver == Solver::Simplex ? simplex_solve(lp) : brute_force_feasible(lp, options.oracle_limits);
}

LpOutcome<Rational> maximum(const LinearProgram<Rational>& lp, const AnalysisOptions& options) {
  return options.solver == Solver::Simplex ? simplex_solve(lp) : brute_force_maximize(lp, options.oracle_limits);
}

}  // namespace

ConnectednessReport is_consistently_connected(const System& system) {
  ConnectednessReport report;
  for (const auto& conn : connections_of(system))
    for (std::size_t i = 0; i < conn.variables.size(); ++i)
      for (std::size_t j = i + 1; j < conn.variables.size(); ++j) {
        Rational m = half_l1(conn.variables[i].distribution, conn.variables[j].distribution);
        if (m != 0) report.consistent = false;
        report.pairs.push_back({conn.content, conn.variables[i].context, conn.variables[j].context, m});
      }
  return report;
}

Rational max_pair_equality(const Distribution& d1, const Distribution& d2) {
  if (d1.outcomes != d2.outcomes)
    throw SystemError(SystemError::Kind::OutcomeSetMismatch, "distributions are over different outcome sets");
  Rational s = 0;
  for (Eigen::Index i = 0; i < d1.mass.size(); ++i) s += std::min(d1.mass[i], d2.mass[i]);
  return s;
}

std::vector<PairTarget> pair_targets(const System& system, Mode mode) {
  std::vector<PairTarget> out;
  for (const auto& conn : connections_of(system))
    for (std::size_t i = 0; i < conn.variables.size(); ++i)
      for (std::size_t j = i + 1; j < conn.variables.size(); ++j) {
        const auto& a = conn.variables[i];
        const auto& b = conn.variables[j];
        Rational t = mode == Mode::Strict ? Rational(1) : max_pair_equality(a.distribution, b.distribution);
        out.push_back({conn.content, a.context, b.context, t});
      }
  return out;
}

Verdict decide_noncontextuality(const System& system, Mode mode, const AnalysisOptions& options) {
  if (mode == Mode::Strict && !is_consistently_connected(system).consistent)
    throw InconsistentSystemError(
        "strict mode requires a consistently connected system; use extended mode for this one");

  Verdict verdict;
  verdict.mode = mode;
  verdict.pair_targets = pair_targets(system, mode);

  CouplingProgram program = build_coupling_lp(system, options.max_assignments);
  for (const auto& t : verdict.pair_targets)
    program.lp.add_equality(equality_indicator(program.space, {t.content, t.context_a}, {t.content, t.context_b}),
                            t.target, "Pr[" + t.content + "^" + t.context_a + " = " + t.content + "^" + t.context_b + "]");

  auto outcome = feasibility(program.lp, options);
  verdict.noncontextual = outcome.feasible();
  if (verdict.noncontextual) {
    verdict.witness = decode(program.space, *outcome.witness);
    verdict.degree = 0;
  } else {
    verdict.degree = contextuality_degree(system, options);
  }
  return verdict;
}

DegreeDetail contextuality_degree_detail(const System& system, const AnalysisOptions& options) {
  auto targets = pair_targets(system, Mode::Extended);
  CouplingProgram program = build_coupling_lp(system, options.max_assignments);
  const auto n = static_cast<Eigen::Index>(program.space.size());

  std::vector<Vector<Rational>> indicators;
  Vector<Rational> objective = Vector<Rational>::Zero(n);
  Rational total_target = 0;
  for (const auto& t : targets) {
    indicators.push_back(equality_indicator(program.space, {t.content, t.context_a}, {t.content, t.context_b}));
    objective += indicators.back();
    total_target += t.target;
  }
  program.lp.objective = objective;

  auto outcome = maximum(program.lp, options);
  if (!outcome.feasible()) throw InternalInconsistency("coupling polytope is empty");

  DegreeDetail detail;
  detail.degree = total_target - *outcome.objective_value;
  for (std::size_t k = 0; k < targets.size(); ++k)
    detail.pairs.push_back({targets[k], Rational(indicators[k].dot(*outcome.witness))});
  detail.optimum = decode(program.space, *outcome.witness);
  return detail;
}

Rational contextuality_degree(const System& system, const AnalysisOptions& options) {
  return contextuality_degree_detail(system, options).degree;
}

bool verify_witness(const System& system, const Coupling& witness, const std::vector<PairTarget>& targets) {
  auto index_of = [&](const Label& l) -> std::optional<std::size_t> {
    auto it = std::find(witness.labels.begin(), witness.labels.end(), l);
    if (it == witness.labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - witness.labels.begin());
  };

  Rational total = 0;
  for (const auto& row : witness.rows) {
    if (row.probability < 0 || row.outcomes.size() != witness.labels.size()) return false;
    total += row.probability;
  }
  if (total != 1) return false;

  for (const auto& bunch : system.bunches()) {
    std::vector<std::size_t> columns;
    for (const auto& m : bunch.members()) {
      auto k = index_of({m.id, bunch.context()});
      if (!k) return false;
      columns.push_back(*k);
    }
    Vector<Rational> projected = Vector<Rational>::Zero(static_cast<Eigen::Index>(bunch.cell_count()));
    std::vector<std::size_t> digits(columns.size());
    for (const auto& row : witness.rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        auto d = bunch.members()[i].outcome_index(row.outcomes[columns[i]]);
        if (!d) return false;
        digits[i] = *d;
      }
      projected[static_cast<Eigen::Index>(bunch.encode(digits))] += row.probability;
    }
    if (projected != bunch.pmf()) return false;
  }

  for (const auto& t : targets) {
    auto a = index_of({t.content, t.context_a});
    auto b = index_of({t.content, t.context_b});
    if (!a || !b) return false;
    Rational equal = 0;
    for (const auto& row : witness.rows)
      if (row.outcomes[*a] == row.outcomes[*b]) equal += row.probability;
    if (equal != t.target) return false;
  }
  return true;
}

Rational feynman_residual(const Rational& p2, const Rational& p3, const Rational& p4) {
  for (const auto* p : {&p2, &p3, &p4})
    if (*p < 0 || *p > 1) throw std::invalid_argument("probabilities must lie in [0, 1]");
  return p4 - (p2 + p3);
}

}  // namespace cbd
