#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cbd/linear_program.hpp"

// Independent exact decision procedures used to cross-check the simplex
// solver. Nothing here shares code with simplex.hpp.

namespace cbd {

class OracleScaleExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  Eigen::Index max_unknowns = 4096;
  Eigen::Index max_constraints = 64;
  /// Largest number of column subsets enumerated directly; beyond it the
  /// facets of the constraint cone are enumerated instead.
  std::uint64_t basis_budget = 20000;
};

enum class OracleRoute { Auto, BasisEnumeration, FacetEnumeration };

namespace detail::oracle {

/// Row-reduced system with the same solution set as A x = b.
template <class Scalar>
struct Reduced {
  Matrix<Scalar> rows;
  Vector<Scalar> rhs;
  std::vector<Eigen::Index> pivots;  // pivot column of each row
};

/// Gauss-Jordan elimination of [A | b]. Empty optional if inconsistent.
template <class Scalar>
std::optional<Reduced<Scalar>> reduce(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  Matrix<Scalar> m(a.rows(), a.cols() + 1);
  m.leftCols(a.cols()) = a;
  m.col(a.cols()) = b;
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < m.rows(); ++c) {
    Eigen::Index p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(r));
    const Scalar lead = m(r, c);
    m.row(r) /= lead;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      m.row(i) -= f * m.row(r);
    }
    pivots.push_back(c);
    ++r;
  }
  for (Eigen::Index i = r; i < m.rows(); ++i)
    if (m(i, a.cols()) != 0) return std::nullopt;
  return Reduced<Scalar>{m.topLeftCorner(r, a.cols()), m.col(a.cols()).head(r), std::move(pivots)};
}

/// Solve a square system exactly; empty optional if singular.
template <class Scalar>
std::optional<Vector<Scalar>> solve_square(Matrix<Scalar> m, Vector<Scalar> rhs) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      m.row(p).swap(m.row(c));
      std::swap(rhs[p], rhs[c]);
    }
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Scalar f = m(i, c) / m(c, c);
      m.row(i).tail(n - c) -= f * m.row(c).tail(n - c);
      rhs[i] -= f * rhs[c];
    }
  }
  Vector<Scalar> x(n);
  for (Eigen::Index i = n; i-- > 0;) {
    Scalar s = rhs[i];
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (m(i, j) != 0) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap + 1;
  }
  return acc;
}

inline bool use_bases(Eigen::Index n, Eigen::Index r, const OracleLimits& limits, OracleRoute route) {
  if (route == OracleRoute::FacetEnumeration) return false;
  const bool within = binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r),
                                      limits.basis_budget) <= limits.basis_budget;
  if (route == OracleRoute::BasisEnumeration && !within)
    throw OracleScaleExceeded("basis enumeration exceeds its budget of " + std::to_string(limits.basis_budget) +
                              " subsets");
  return within;
}

/**
 * Enumerate every r-subset of columns; each nonsingular subset yields a basic
 * solution. Returns the first nonnegative one, or the one with the largest
 * objective value when `objective` is given.
 */
template <class Scalar>
LpOutcome<Scalar> enumerate_bases(const Reduced<Scalar>& sys, Eigen::Index n, const Vector<Scalar>* objective) {
  const Eigen::Index r = sys.rows.rows();
  std::vector<Eigen::Index> subset(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = i;

  LpOutcome<Scalar> best{LpStatus::Infeasible, std::nullopt, std::nullopt};
  Matrix<Scalar> square(r, r);
  for (;;) {
    for (Eigen::Index k = 0; k < r; ++k) square.col(k) = sys.rows.col(subset[static_cast<std::size_t>(k)]);
    if (auto xs = solve_square<Scalar>(square, sys.rhs)) {
      bool nonnegative = true;
      for (Eigen::Index k = 0; k < r && nonnegative; ++k) nonnegative = (*xs)[k] >= 0;
      if (nonnegative) {
        Vector<Scalar> x = Vector<Scalar>::Zero(n);
        for (Eigen::Index k = 0; k < r; ++k) x[subset[static_cast<std::size_t>(k)]] = (*xs)[k];
        if (!objective) return {LpStatus::Feasible, std::move(x), std::nullopt};
        Scalar value = objective->dot(x);
        if (!best.objective_value || value > *best.objective_value) best = {LpStatus::Optimal, std::move(x), value};
      }
    }
    // next combination in lexicographic order
    Eigen::Index i = r - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < r; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

/// Fixed-width bitset over generator indices.
class ZeroSet {
 public:
  explicit ZeroSet(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  ZeroSet operator&(const ZeroSet& o) const {
    ZeroSet out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= o.words_[i];
    return out;
  }
  bool contains(const ZeroSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

/**
 * Double-description enumeration of the extreme rays of {y : G y >= 0},
 * where G has full column rank. Rows of G are the cone generators, so the
 * result is the set of facet normals of the cone they span.
 */
template <class Scalar>
std::vector<Vector<Scalar>> extreme_rays(const Matrix<Scalar>& g) {
  const Eigen::Index n = g.rows();
  const Eigen::Index d = g.cols();
  const auto un = static_cast<std::size_t>(n);

  struct Ray {
    Vector<Scalar> y;
    ZeroSet zeros;
  };

  auto normalize = [](Vector<Scalar>& y) {
    for (Eigen::Index k = 0; k < y.size(); ++k)
      if (y[k] != 0) {
        Scalar s = y[k] < 0 ? Scalar(-y[k]) : y[k];
        y /= s;
        return;
      }
  };

  // Greedy choice of d independent generators for the initial simplicial cone.
  std::vector<Eigen::Index> basis;
  Matrix<Scalar> echelon(0, d);
  for (Eigen::Index j = 0; j < n && static_cast<Eigen::Index>(basis.size()) < d; ++j) {
    Matrix<Scalar> trial(echelon.rows() + 1, d);
    trial.topRows(echelon.rows()) = echelon;
    trial.row(echelon.rows()) = g.row(j);
    auto red = reduce<Scalar>(trial, Vector<Scalar>::Zero(trial.rows()));
    if (static_cast<Eigen::Index>(red->pivots.size()) > echelon.rows()) {
      basis.push_back(j);
      echelon = red->rows;
    }
  }
  if (static_cast<Eigen::Index>(basis.size()) < d)
    throw std::invalid_argument("cone generators do not span the space");

  Matrix<Scalar> square(d, d);
  for (Eigen::Index k = 0; k < d; ++k) square.row(k) = g.row(basis[static_cast<std::size_t>(k)]);
  std::vector<bool> processed(un, false);
  for (auto j : basis) processed[static_cast<std::size_t>(j)] = true;

  std::vector<Ray> rays;
  for (Eigen::Index k = 0; k < d; ++k) {
    Vector<Scalar> e = Vector<Scalar>::Zero(d);
    e[k] = 1;
    Ray ray{*solve_square<Scalar>(square, e), ZeroSet(un)};
    for (Eigen::Index l = 0; l < d; ++l)
      if (l != k) ray.zeros.set(static_cast<std::size_t>(basis[static_cast<std::size_t>(l)]));
    normalize(ray.y);
    rays.push_back(std::move(ray));
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    if (processed[static_cast<std::size_t>(j)]) continue;
    processed[static_cast<std::size_t>(j)] = true;
    std::vector<Scalar> slack(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      Scalar s = 0;
      for (Eigen::Index l = 0; l < d; ++l)
        if (g(j, l) != 0 && rays[k].y[l] != 0) s += g(j, l) * rays[k].y[l];
      slack[k] = s;
      if (s > 0) pos.push_back(k);
      else if (s < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (slack[k] == 0) rays[k].zeros.set(static_cast<std::size_t>(j));
      continue;
    }

    std::vector<Ray> next;
    for (auto p : pos)
      for (auto q : neg) {
        ZeroSet common = rays[p].zeros & rays[q].zeros;
        if (static_cast<Eigen::Index>(common.count()) < d - 2) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != q && rays[t].zeros.contains(common)) adjacent = false;
        if (!adjacent) continue;
        Ray ray{Vector<Scalar>(slack[p] * rays[q].y - slack[q] * rays[p].y), std::move(common)};
        ray.zeros.set(static_cast<std::size_t>(j));
        normalize(ray.y);
        next.push_back(std::move(ray));
      }
    std::vector<Ray> kept;
    kept.reserve(rays.size() - neg.size() + next.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (slack[k] < 0) continue;
      if (slack[k] == 0) rays[k].zeros.set(static_cast<std::size_t>(j));
      kept.push_back(std::move(rays[k]));
    }
    for (auto& ray : next) kept.push_back(std::move(ray));
    rays = std::move(kept);
  }

  std::vector<Vector<Scalar>> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.y));
  return out;
}

/**
 * Given the facet normals of cone(G^T), decompose `target` into a
 * nonnegative combination of generators by greedily taking, column by
 * column, the largest step that keeps the residual inside the cone.
 */
template <class Scalar>
Vector<Scalar> decompose(const Matrix<Scalar>& generators_by_column, const std::vector<Vector<Scalar>>& facets,
                         Vector<Scalar> target) {
  const Eigen::Index n = generators_by_column.cols();
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  std::vector<Scalar> level(facets.size());
  for (std::size_t f = 0; f < facets.size(); ++f) level[f] = facets[f].dot(target);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::optional<Scalar> step;
    std::vector<Scalar> rate(facets.size());
    for (std::size_t f = 0; f < facets.size(); ++f) {
      rate[f] = facets[f].dot(generators_by_column.col(j));
      if (rate[f] > 0) {
        Scalar s = level[f] / rate[f];
        if (!step || s < *step) step = s;
      }
    }
    if (!step || *step == 0) continue;
    x[j] = *step;
    target -= *step * generators_by_column.col(j);
    for (std::size_t f = 0; f < facets.size(); ++f) level[f] -= *step * rate[f];
  }
  if (!target.isZero())
    throw InternalInconsistency("cone decomposition left a residual; the cone is not pointed");
  return x;
}

}  // namespace detail::oracle

/**
 * Decide feasibility of A x = b, x >= 0 without the simplex method.
 *
 * After exact row reduction to r independent rows, either every r-subset of
 * columns is tried as a basis (when C(n, r) is within the budget), or the
 * facets of the cone spanned by the columns are enumerated by double
 * description and b is tested against each of them. In the second case the
 * witness comes from a greedy cone decomposition.
 */
template <class Scalar>
LpOutcome<Scalar> brute_force_feasible(const LinearProgram<Scalar>& lp, OracleLimits limits = {},
                                       OracleRoute route = OracleRoute::Auto) {
  namespace o = detail::oracle;
  if (lp.unknowns() > limits.max_unknowns || lp.constraints() > limits.max_constraints)
    throw OracleScaleExceeded("program exceeds the brute-force oracle scale (" + std::to_string(lp.unknowns()) +
                              " unknowns, " + std::to_string(lp.constraints()) + " constraints)");
  const LpOutcome<Scalar> infeasible{LpStatus::Infeasible, std::nullopt, std::nullopt};
  auto sys = o::reduce<Scalar>(lp.equalities, lp.rhs);
  if (!sys) return infeasible;
  const Eigen::Index n = lp.unknowns();
  const Eigen::Index r = sys->rows.rows();
  if (r == 0) return {LpStatus::Feasible, Vector<Scalar>::Zero(n), std::nullopt};

  const bool enumerate = o::use_bases(n, r, limits, route);
  if (enumerate) return o::enumerate_bases<Scalar>(*sys, n, nullptr);

  auto facets = o::extreme_rays<Scalar>(sys->rows.transpose());
  for (const auto& f : facets)
    if (f.dot(sys->rhs) < 0) return infeasible;
  return {LpStatus::Feasible, o::decompose<Scalar>(sys->rows, facets, sys->rhs), std::nullopt};
}

/**
 * Maximize the program's objective without the simplex method, by the same
 * two routes as brute_force_feasible. The facet route works in the cone of
 * columns extended by their objective coefficient: the optimum is the
 * largest t with (b, t) inside that cone. The feasible region must be
 * bounded.
 */
template <class Scalar>
LpOutcome<Scalar> brute_force_maximize(const LinearProgram<Scalar>& lp, OracleLimits limits = {},
                                       OracleRoute route = OracleRoute::Auto) {
  namespace o = detail::oracle;
  if (!lp.objective) throw std::invalid_argument("brute_force_maximize needs an objective");
  if (lp.unknowns() > limits.max_unknowns || lp.constraints() > limits.max_constraints)
    throw OracleScaleExceeded("program exceeds the brute-force oracle scale");
  const LpOutcome<Scalar> infeasible{LpStatus::Infeasible, std::nullopt, std::nullopt};
  auto sys = o::reduce<Scalar>(lp.equalities, lp.rhs);
  if (!sys) return infeasible;
  const Eigen::Index n = lp.unknowns();
  const Eigen::Index r = sys->rows.rows();
  const Vector<Scalar>& c = *lp.objective;

  const bool enumerate = o::use_bases(n, r, limits, route);
  if (r > 0 && enumerate) return o::enumerate_bases<Scalar>(*sys, n, &c);

  // Extended rows [A; c^T]; if c lies in the row space the objective is
  // constant on the feasible set.
  Matrix<Scalar> extended(r + 1, n);
  extended.topRows(r) = sys->rows;
  extended.row(r) = c.transpose();
  auto ext = o::reduce<Scalar>(extended, Vector<Scalar>::Zero(r + 1));
  if (r == 0 && ext->rows.rows() == 0) return {LpStatus::Optimal, Vector<Scalar>::Zero(n), Scalar(0)};
  if (ext->rows.rows() == r) {
    auto feasible = brute_force_feasible<Scalar>(lp, limits, route);
    if (!feasible.feasible()) return infeasible;
    Scalar value = c.dot(*feasible.witness);
    return {LpStatus::Optimal, feasible.witness, value};
  }
  if (r > 0) {
    auto facets = o::extreme_rays<Scalar>(sys->rows.transpose());
    for (const auto& f : facets)
      if (f.dot(sys->rhs) < 0) return infeasible;
  }
  auto facets = o::extreme_rays<Scalar>(extended.transpose());
  Vector<Scalar> point(r + 1);
  point.head(r) = sys->rhs;
  point[r] = 0;
  std::optional<Scalar> best;
  for (const auto& f : facets) {
    if (f[r] >= 0) continue;
    Scalar t = f.head(r).dot(sys->rhs) / Scalar(-f[r]);
    if (!best || t < *best) best = t;
  }
  if (!best) throw InternalInconsistency("objective is unbounded");
  point[r] = *best;
  return {LpStatus::Optimal, o::decompose<Scalar>(extended, facets, point), *best};
}

}  // namespace cbd
