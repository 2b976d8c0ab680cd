#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbd/rational.hpp"

namespace cbd {

/// The LP reached a state that cannot occur for a bounded program.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Equality-form linear program over nonnegative unknowns:
 *
 *     A x = b,  x >= 0,  optionally maximize c^T x.
 *
 * Rows are dense; each carries a short label used by the text dump.
 */
template <class Scalar>
struct LinearProgram {
  Matrix<Scalar> equalities;
  Vector<Scalar> rhs;
  std::vector<std::string> row_labels;
  std::optional<Vector<Scalar>> objective;

  explicit LinearProgram(Eigen::Index unknowns = 0) : equalities(0, unknowns), rhs(0) {}

  Eigen::Index unknowns() const { return equalities.cols(); }
  Eigen::Index constraints() const { return equalities.rows(); }

  void add_equality(const Vector<Scalar>& coefficients, const Scalar& value, std::string label = {}) {
    if (coefficients.size() != unknowns())
      throw std::invalid_argument("constraint width does not match the number of unknowns");
    const Eigen::Index r = constraints();
    equalities.conservativeResize(r + 1, Eigen::NoChange);
    equalities.row(r) = coefficients.transpose();
    rhs.conservativeResize(r + 1);
    rhs[r] = value;
    row_labels.push_back(std::move(label));
  }
};

enum class LpStatus { Feasible, Infeasible, Optimal };

inline const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Feasible: return "feasible";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Optimal: return "optimal";
  }
  return "?";
}

template <class Scalar>
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Vector<Scalar>> witness;
  std::optional<Scalar> objective_value;

  bool feasible() const { return status != LpStatus::Infeasible; }
};

/// Exact membership check: x >= 0 and A x = b.
template <class Scalar>
bool satisfies(const LinearProgram<Scalar>& lp, const Vector<Scalar>& x) {
  if (x.size() != lp.unknowns()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] < 0) return false;
  for (Eigen::Index i = 0; i < lp.constraints(); ++i) {
    Scalar lhs = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (lp.equalities(i, j) != 0 && x[j] != 0) lhs += lp.equalities(i, j) * x[j];
    if (lhs != lp.rhs[i]) return false;
  }
  return true;
}

/**
 * Plain-text dump, one constraint per line as `<coef>*x<i> + ... = <rhs>`,
 * zero coefficients omitted, an optional `maximize:` line last.
 */
template <class Scalar>
std::string dump(const LinearProgram<Scalar>& lp) {
  auto terms = [](const auto& row) {
    std::ostringstream s;
    bool first = true;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      if (row[j] == 0) continue;
      if (!first) s << " + ";
      s << to_string(Scalar(row[j])) << "*x" << j;
      first = false;
    }
    if (first) s << "0";
    return s.str();
  };
  std::ostringstream out;
  out << "# unknowns " << lp.unknowns() << ", constraints " << lp.constraints() << "\n";
  for (Eigen::Index i = 0; i < lp.constraints(); ++i) {
    if (i < static_cast<Eigen::Index>(lp.row_labels.size()) && !lp.row_labels[i].empty())
      out << "# " << lp.row_labels[i] << "\n";
    out << terms(lp.equalities.row(i)) << " = " << to_string(Scalar(lp.rhs[i])) << "\n";
  }
  if (lp.objective) out << "maximize: " << terms(*lp.objective) << "\n";
  return out.str();
}

}  // namespace cbd
