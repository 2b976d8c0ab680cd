#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace cbd {

/// Exact rational backed by GMP. Expression templates are disabled so the type
/// behaves as a plain value inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Parse an exact rational literal.
 *
 * Accepted forms: `p/q`, signed integers, and finite decimals such as `0.25`
 * or `-.5`. Decimals are converted exactly (`0.25` becomes `1/4`). Throws
 * std::invalid_argument on anything else, including a zero denominator.
 */
Rational parse_rational(std::string_view text);

/// Canonical text form: `p/q` in lowest terms, or just `p` when q = 1.
std::string to_string(const Rational& value);

}  // namespace cbd
