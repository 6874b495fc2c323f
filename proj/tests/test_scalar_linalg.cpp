#include "doctest.h"

#include "plumb/exact_linalg.hpp"
#include "plumb/scalar.hpp"

#include <numeric>
#include <random>

using namespace plumb;

namespace {

// cofactor expansion along the first row, machine integers
std::int64_t laplace_det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    det += (c % 2 == 0 ? 1 : -1) * a[0][c] * laplace_det(minor);
  }
  return det;
}

IntMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  IntMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

Integer gcd_of_entries(const IntMatrix& m) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g = boost::multiprecision::gcd(g, m(i, j));
  return g;
}

}  // namespace

TEST_CASE("floor and ceil of rationals") {
  CHECK(plumb::floor(Rational(7, 2)) == 3);
  CHECK(plumb::floor(Rational(-7, 2)) == -4);
  CHECK(plumb::floor(Rational(-4)) == -4);
  CHECK(plumb::ceil(Rational(7, 2)) == 4);
  CHECK(plumb::ceil(Rational(-7, 2)) == -3);
  CHECK(plumb::ceil(Rational(5)) == 5);
}

TEST_CASE("isqrt") {
  for (int n = 0; n < 2000; ++n) {
    const Integer r = isqrt(Integer(n));
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  CHECK(isqrt(Integer("100000000000000000000")) == Integer("10000000000"));
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational(" -10/4 ") == Rational(-5, 2));
  CHECK(parse_rational("+1/3") == Rational(1, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(to_fraction_string(Rational(4)) == "4/1");
  CHECK(to_fraction_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_display_string(Rational(4)) == "4");
  CHECK(to_display_string(Rational(-3, 2)) == "-3/2");
  CHECK(is_integer(Rational(8, 4)));
  CHECK_FALSE(is_integer(Rational(1, 2)));
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const IntMatrix m = random_matrix(rng, n, n, 4);
    std::vector<std::vector<std::int64_t>> plain(n, std::vector<std::int64_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) plain[i][j] = to_int64(m(i, j));
    CHECK(bareiss_determinant(m) == laplace_det(plain));
  }
}

TEST_CASE("adjugate and inverse") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const IntMatrix m = random_matrix(rng, n, n, 5);
    const Integer det = bareiss_determinant(m);
    const IntMatrix adj = adjugate(m);
    CHECK(m * adj == det * IntMatrix::Identity(n, n));
    CHECK(adj * m == det * IntMatrix::Identity(n, n));
    if (det == 0) {
      CHECK_THROWS(exact_inverse(to_rational(m)));
      continue;
    }
    const RatMatrix inv = exact_inverse(to_rational(m));
    CHECK(inv * to_rational(m) == RatMatrix::Identity(n, n));
    CHECK(inv == to_rational(adj) / Rational(det));
    const RatVector b = to_rational(random_matrix(rng, n, 1, 7).col(0).eval());
    CHECK(to_rational(m) * exact_solve(to_rational(m), b) == b);
  }
}

TEST_CASE("upper LDL reproduces a positive definite form") {
  RatMatrix q(3, 3);
  q << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const auto f = upper_ldl(q);
  CHECK(f.u.transpose() * f.d.asDiagonal() * f.u == q);
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(f.u(i, i) == 1);
    CHECK(f.d(i) > 0);
    for (Eigen::Index j = 0; j < i; ++j) CHECK(f.u(i, j) == 0);
  }
}

TEST_CASE("Smith normal form: U A V = D, unimodular U and V, divisibility chain") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    const IntMatrix a = random_matrix(rng, rows, cols, 6);
    const auto snf = smith_normal_form(a);
    CAPTURE(trial);
    CHECK(snf.u * a * snf.v == snf.d);
    CHECK(abs(bareiss_determinant(snf.u)) == 1);
    CHECK(abs(bareiss_determinant(snf.v)) == 1);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        if (i != j) CHECK(snf.d(i, j) == 0);
    const auto f = snf.invariant_factors();
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(f[i] >= 0);
      if (i + 1 < f.size() && f[i] != 0) CHECK(f[i + 1] % f[i] == 0);
      if (f[i] == 0 && i + 1 < f.size()) CHECK(f[i + 1] == 0);
    }
    // d_1 is the gcd of the entries
    CHECK(f.front() == gcd_of_entries(a));
    if (rows == cols) {
      Integer product = 1;
      for (const auto& x : f) product *= x;
      CHECK(product == abs(bareiss_determinant(a)));
    }
  }
}

TEST_CASE("Smith normal form of 2M for the example plumbing") {
  IntMatrix m(4, 4);
  m << -2, 1, 1, 1, 1, -2, 0, 0, 1, 0, -3, 0, 1, 0, 0, -2;
  const auto f = smith_normal_form(IntMatrix(2 * m)).invariant_factors();
  CHECK(f == std::vector<Integer>{2, 2, 2, 16});
  CHECK(smith_normal_form(m).invariant_factors() == std::vector<Integer>{1, 1, 1, 8});
}
