#pragma once

#include <vector>

#include "cbd/linear_program.hpp"

namespace cbd {

namespace detail {

/**
 * Dense tableau for the two-phase method. Columns are the original unknowns,
 * then one artificial per row, then the right-hand side. The last row holds
 * reduced costs d_j = c_B B^-1 a_j - c_j for a maximization objective, with
 * the current objective value in the rhs column.
 */
template <class Scalar>
class Tableau {
 public:
  Tableau(const LinearProgram<Scalar>& lp) : m_(lp.constraints()), n_(lp.unknowns()) {
    table_ = Matrix<Scalar>::Zero(m_ + 1, n_ + m_ + 1);
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      const bool flip = lp.rhs[i] < 0;
      for (Eigen::Index j = 0; j < n_; ++j)
        if (lp.equalities(i, j) != 0) table_(i, j) = flip ? Scalar(-lp.equalities(i, j)) : lp.equalities(i, j);
      table_(i, n_ + i) = 1;
      table_(i, rhs_col()) = flip ? Scalar(-lp.rhs[i]) : lp.rhs[i];
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
  }

  Eigen::Index rhs_col() const { return n_ + m_; }

  /// Phase 1: maximize minus the sum of artificials. Returns that optimum.
  Scalar phase_one() {
    for (Eigen::Index j = 0; j <= rhs_col(); ++j) {
      Scalar s = 0;
      if (j < n_ || j == rhs_col())
        for (Eigen::Index i = 0; i < m_; ++i) s -= table_(i, j);
      table_(m_, j) = s;
    }
    optimize(rhs_col());
    return table_(m_, rhs_col());
  }

  /// Pivot zero-level artificials out of the basis where an original column
  /// allows it; rows where none does are redundant and stay inert.
  void evict_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j)
        if (table_(i, j) != 0) {
          pivot(i, j);
          break;
        }
    }
  }

  /// Phase 2 over the original columns only.
  Scalar phase_two(const Vector<Scalar>& objective) {
    for (Eigen::Index j = 0; j <= rhs_col(); ++j) {
      Scalar s = 0;
      for (Eigen::Index i = 0; i < m_; ++i) {
        auto b = basis_[static_cast<std::size_t>(i)];
        if (b < n_ && objective[b] != 0 && table_(i, j) != 0) s += objective[b] * table_(i, j);
      }
      if (j < n_) s -= objective[j];
      table_(m_, j) = s;
    }
    optimize(n_);
    return table_(m_, rhs_col());
  }

  Vector<Scalar> solution() const {
    Vector<Scalar> x = Vector<Scalar>::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      auto b = basis_[static_cast<std::size_t>(i)];
      if (b < n_) x[b] = table_(i, rhs_col());
    }
    return x;
  }

 private:
  // Bland's rule: lowest-index improving column, ties in the ratio test
  // broken by the lowest basic index. Terminates on degenerate programs.
  void optimize(Eigen::Index allowed_columns) {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_columns; ++j)
        if (table_(m_, j) < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return;

      Eigen::Index leave = -1;
      Scalar best_ratio;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (!(table_(i, enter) > 0)) continue;
        Scalar ratio = table_(i, rhs_col()) / table_(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw InternalInconsistency("linear program is unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Scalar scale = table_(row, col);
    table_.row(row) /= scale;
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row || table_(i, col) == 0) continue;
      const Scalar factor = table_(i, col);
      for (Eigen::Index j = 0; j <= rhs_col(); ++j)
        if (table_(row, j) != 0) table_(i, j) -= factor * table_(row, j);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Matrix<Scalar> table_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/**
 * Exact two-phase simplex with Bland's rule.
 *
 * Without an objective the result is `Feasible` with the basic solution left
 * by phase 1; with one it is `Optimal` with an optimal basic solution. The
 * witness always satisfies every constraint with exact equality. An unbounded
 * objective throws InternalInconsistency.
 */
template <class Scalar>
LpOutcome<Scalar> simplex_solve(const LinearProgram<Scalar>& lp) {
  detail::Tableau<Scalar> tableau(lp);
  if (tableau.phase_one() != 0) return {LpStatus::Infeasible, std::nullopt, std::nullopt};
  tableau.evict_artificials();
  if (!lp.objective) return {LpStatus::Feasible, tableau.solution(), std::nullopt};
  Scalar value = tableau.phase_two(*lp.objective);
  return {LpStatus::Optimal, tableau.solution(), value};
}

}  // namespace cbd
