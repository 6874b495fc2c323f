#pragma once

// Exact scalar types and the dense Eigen containers built on them.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace plumb {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// Largest integer <= x.
Integer floor(const Rational& x);
/// Smallest integer >= x.
Integer ceil(const Rational& x);
/// Largest integer r with r*r <= n; n must be non-negative.
Integer isqrt(const Integer& n);

/// Parses "p", "-p" or "p/q" (whitespace tolerant). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
/// Canonical machine form "p/q" with q >= 1.
std::string to_fraction_string(const Rational& x);
/// Human form: "p" for integers, "p/q" otherwise.
std::string to_display_string(const Rational& x);

bool is_integer(const Rational& x);
std::int64_t to_int64(const Integer& x);

template <typename Scalar>
Matrix<Rational> to_rational(const Matrix<Scalar>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

template <typename Scalar>
Vector<Rational> to_rational(const Vector<Scalar>& v) {
  Vector<Rational> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

IntVector to_int_vector(const std::vector<std::int64_t>& values);

}  // namespace plumb
