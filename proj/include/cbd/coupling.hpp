#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbd/linear_program.hpp"
#include "cbd/system.hpp"

namespace cbd {

inline constexpr std::size_t kDefaultMaxAssignments = std::size_t{1} << 20;

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * The product space of global assignments: one outcome for every label of a
 * system. Assignments are indexed in mixed radix, first label most
 * significant, labels in System::labels() order.
 */
class CouplingSpace {
 public:
  CouplingSpace(const System& system, std::size_t max_assignments = kDefaultMaxAssignments);

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t label_index(const Label& label) const;
  const std::vector<std::string>& outcomes(std::size_t label) const { return outcomes_[label]; }

  /// Outcome index taken by `label` in assignment `assignment`.
  std::size_t digit(std::size_t assignment, std::size_t label) const {
    return (assignment / strides_[label]) % outcomes_[label].size();
  }

  /// Outcome symbols of an assignment, one per label.
  std::vector<std::string> describe(std::size_t assignment) const;

 private:
  std::vector<Label> labels_;
  std::vector<std::vector<std::string>> outcomes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// A coupling LP together with the space its unknowns range over.
struct CouplingProgram {
  CouplingSpace space;
  LinearProgram<Rational> lp;
};

/**
 * Coupling polytope of a system: one unknown per global assignment, a total
 * mass row, and one row per (bunch, outcome tuple) fixing the probability of
 * that tuple. Connection constraints are added separately. Throws
 * SizeCapExceeded when the product space exceeds `max_assignments`.
 */
CouplingProgram build_coupling_lp(const System& system, std::size_t max_assignments = kDefaultMaxAssignments);

/// Coefficient row selecting the assignments on which two labels agree.
Vector<Rational> equality_indicator(const CouplingSpace& space, const Label& a, const Label& b);

/**
 * Append Pr[R_q^{c1} = R_q^{c2}] = value for content q = conn.content.
 * Throws std::invalid_argument for a context outside the connection or a
 * value outside [0, 1].
 */
CouplingProgram add_equality_probability_constraint(CouplingProgram program, const Connection& conn,
                                                    std::string_view context_a, std::string_view context_b,
                                                    const Rational& value);

}  // namespace cbd
