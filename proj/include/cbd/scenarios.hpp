#pragma once

#include <array>
#include <cstdint>
#include <variant>

#include "cbd/system.hpp"

namespace cbd {

/// Outcome symbols used by every binary scenario, in outcome-set order.
inline const std::vector<std::string> kBinaryOutcomes{"+1", "-1"};

/**
 * One binary content "hit" recorded in four contexts c1..c4 (both slits
 * closed, left open, right open, both open), each a singleton bunch with
 * Pr[+1] = p_c. Throws std::invalid_argument outside [0, 1].
 */
System make_double_slit(const Rational& p1, const Rational& p2, const Rational& p3, const Rational& p4);

/**
 * Cyclic rank-4 system in expectation form. Contexts c1..c4 hold the pairs
 * (A1,B1), (B1,A2), (A2,B2), (B2,A1). `correlations[k]` is the product
 * expectation in context k; `marginals` lists the eight variable expectations
 * in the same order the pairs are written: A1^1 B1^1 B1^2 A2^2 A2^3 B2^3
 * B2^4 A1^4.
 */
struct Cyclic4Params {
  std::array<Rational, 4> correlations;
  std::array<Rational, 8> marginals;

  /// Same marginal expectation for each content in both of its contexts.
  static Cyclic4Params consistent(const std::array<Rational, 4>& correlations, const Rational& a1,
                                  const Rational& b1, const Rational& a2, const Rational& b2);
};

/// Cells are (1 + s_a m_a + s_b m_b + s_a s_b e) / 4. Throws
/// std::invalid_argument if any cell of any bunch would be negative.
System make_cyclic4(const Cyclic4Params& params);

/// 2x2 pmf; entry (i, j) is Pr[first = outcome i, second = outcome j] in
/// (+1, -1) order.
using BinaryPmf = Eigen::Matrix<Rational, 2, 2>;

/// Contexts c1 = (q1, q2) and c2 = (q2, q3); q2 is the only shared content.
System make_griffiths(const BinaryPmf& first, const BinaryPmf& second);

struct Cyclic4Shape {
  bool consistent = false;  // share each content's marginal across its two contexts
};
struct GriffithsShape {};
struct SingleContentShape {
  std::size_t contexts = 4;
};
using SystemShape = std::variant<Cyclic4Shape, GriffithsShape, SingleContentShape>;

/**
 * Deterministic pseudorandom system of the given shape. One denominator
 * d in [2, denominator_bound] is drawn per system and every cell is a
 * multiple of 1/d, sampled uniformly over the cells compatible with the
 * shape's marginal structure.
 */
System sample_random_system(const SystemShape& shape, unsigned denominator_bound, std::uint64_t seed);

}  // namespace cbd
