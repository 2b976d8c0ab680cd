#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbd/coupling.hpp"
#include "cbd/oracle.hpp"
#include "cbd/system.hpp"

namespace cbd {

enum class Mode { Strict, Extended };
enum class Solver { Simplex, BruteForce };

const char* to_string(Mode mode);

/// Strict mode was requested for a system whose connections are not consistent.
class InconsistentSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalysisOptions {
  std::size_t max_assignments = kDefaultMaxAssignments;
  Solver solver = Solver::Simplex;
  OracleLimits oracle_limits = {};
};

/// Half the L1 distance between the marginals of two content-sharing variables.
struct PairMismatch {
  std::string content;
  std::string context_a;
  std::string context_b;
  Rational mismatch;
};

struct ConnectednessReport {
  bool consistent = true;
  std::vector<PairMismatch> pairs;
};

/// Equality-probability target imposed on one unordered pair of a connection.
struct PairTarget {
  std::string content;
  std::string context_a;
  std::string context_b;
  Rational target;
};

/// A coupling restricted to its nonzero global assignments.
struct Coupling {
  struct Row {
    std::vector<std::string> outcomes;  // one per label
    Rational probability;
  };
  std::vector<Label> labels;
  std::vector<Row> rows;
};

struct Verdict {
  Mode mode = Mode::Extended;
  bool noncontextual = false;
  std::optional<Coupling> witness;
  std::vector<PairTarget> pair_targets;
  Rational degree;
};

/// Result of the shortfall optimization behind contextuality_degree.
struct DegreeDetail {
  struct Pair {
    PairTarget target;
    Rational achieved;
  };
  Rational degree;
  std::vector<Pair> pairs;
  Coupling optimum;
};

ConnectednessReport is_consistently_connected(const System& system);

/// max over couplings of Pr[X = Y] = sum_v min(d1(v), d2(v)).
/// Throws SystemError(OutcomeSetMismatch) if the outcome sets differ.
Rational max_pair_equality(const Distribution& d1, const Distribution& d2);

/// Targets for every unordered context pair of every connection: 1 in strict
/// mode, the maximal equality probability of the two marginals otherwise.
std::vector<PairTarget> pair_targets(const System& system, Mode mode);

/**
 * Noncontextuality test. Builds the coupling LP, adds one equality-probability
 * constraint per target and decides feasibility with the chosen solver. A
 * contextual verdict also carries the degree. Strict mode throws
 * InconsistentSystemError on inconsistently connected systems.
 */
Verdict decide_noncontextuality(const System& system, Mode mode, const AnalysisOptions& options = {});

/**
 * Total shortfall of pair-equality probabilities below their extended-mode
 * targets, minimized over all couplings in a single optimization. Zero iff
 * the system is extended-noncontextual. Each achieved probability is bounded
 * by its target for every coupling, so the bound needs no explicit row.
 */
DegreeDetail contextuality_degree_detail(const System& system, const AnalysisOptions& options = {});
Rational contextuality_degree(const System& system, const AnalysisOptions& options = {});

/// Exact check that a coupling reproduces every bunch and meets every target.
bool verify_witness(const System& system, const Coupling& witness, const std::vector<PairTarget>& targets);

/// p4 - (p2 + p3). An arithmetic report only: the three probabilities belong
/// to different contexts and constrain nothing about each other.
Rational feynman_residual(const Rational& p2, const Rational& p3, const Rational& p4);

}  // namespace cbd
