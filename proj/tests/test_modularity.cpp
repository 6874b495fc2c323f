#include "doctest.h"

#include "plumb/errors.hpp"
#include "plumb/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace plumb;

namespace {

F0Spec example() { return f0_spec(parse_seifert("M(2; 2/1, 3/1, 2/1)")); }

TLaurent binomial(std::int64_t e, const Rational& c) {
  TLaurent p;
  p.add_term(e, c);
  p.add_term(-e, -c);
  return p;
}

// Displayed piecewise form of D(n; t) for the example star, A = 12.
TLaurent piecewise_d(std::int64_t n) {
  const std::int64_t r = ((n % 24) + 24) % 24;
  if (r == 4) return binomial((n - 4 + 24) / 12, 1) + binomial((n - 4) / 12, 1);
  if (r == 20) return binomial((n + 4 - 24) / 12, -1) + binomial((n + 4) / 12, -1);
  if (r == 8) return binomial((n - 8) / 12, 2);
  if (r == 16) return binomial((n + 8) / 12, -2);
  return {};
}

// sum_{n >= 0} c(n) e^{-tau n^2} -> c(0) + sum_{r=1}^{P} c(r) (1/2 - r/P) for
// P-periodic c of mean zero (Hurwitz zeta at s = 0).
std::complex<double> hurwitz_limit(const std::function<std::complex<double>(std::int64_t)>& c, std::int64_t period) {
  std::complex<double> sum = c(0);
  for (std::int64_t r = 1; r <= period; ++r) sum += c(r) * (0.5 - static_cast<double>(r) / static_cast<double>(period));
  return sum;
}

}  // namespace

TEST_CASE("C and D coefficients") {
  CHECK(c_coefficient({-1, -1, -1}, 1) == TLaurent::monomial(-2, Rational(1, 2)) + TLaurent::monomial(2, Rational(1, 2)));
  CHECK(d_coefficient({1, 1, 1}, -1) == binomial(2, 1));
  CHECK(d_coefficient({1, -1, 1}, 1) == binomial(2, -1));
}

TEST_CASE("D matches the displayed piecewise formula") {
  const F0Spec spec = example();
  for (std::int64_t n = -300; n <= 300; ++n) {
    CAPTURE(n);
    CHECK(coefficient_at(spec, CoefficientKind::D, n) == piecewise_d(n));
  }
  CHECK(coefficient_at(spec, CoefficientKind::D, 4) == binomial(2, 1));
  CHECK(coefficient_at(spec, CoefficientKind::D, 8).is_zero());
  CHECK(coefficient_at(spec, CoefficientKind::D, 16) == binomial(2, -2));
  CHECK(coefficient_at(spec, CoefficientKind::D, 20) == binomial(2, -1));
  CHECK(coefficient_at(spec, CoefficientKind::D, 28) == binomial(4, 1) + binomial(2, 1));
}

TEST_CASE("periodic tables at roots of unity") {
  const F0Spec spec = example();
  for (std::int64_t two_j : {2, 4, 6}) {
    CAPTURE(two_j);
    const CoefficientData c = c_function(spec, two_j), d = d_function(spec, two_j);
    CHECK(c.fn.period == spec.a * two_j);
    CHECK(c.fn.table.size() == static_cast<std::size_t>(spec.a * two_j));
    CHECK(c.fn.is_odd());
    CHECK(c.fn.mean_zero());
    CHECK(d.fn.is_even());
    for (std::int64_t n = -200; n <= 200; ++n) {
      CHECK(c.fn(n) == specialize_t(coefficient_at(spec, CoefficientKind::C, n), two_j));
      CHECK(specialize_t(coefficient_at(spec, CoefficientKind::C, n + c.fn.period), two_j) == c.fn(n));
      CHECK(specialize_t(coefficient_at(spec, CoefficientKind::D, n + d.fn.period), two_j) == d.fn(n));
    }
  }
  CHECK_THROWS_AS(c_function(spec, 3), PreconditionError);
  CHECK_THROWS_AS(c_function(f0_spec(parse_seifert("M(2; 2/1, 2/1, 2/1, 3/1)")), 2), PreconditionError);
}

TEST_CASE("reassembly into polynomial plus theta part") {
  for (const char* m : {"M(2; 2/1, 3/1, 2/1)", "M(2; 7/2, 3/1, 2/1)", "M(1; 2/1, 3/1, 7/1)"}) {
    CAPTURE(m);
    const F0Spec spec = f0_spec(parse_seifert(m));
    const Rational n = 30;
    for (std::int64_t two_j : {2, 4, 6}) {
      const CoefficientData c = c_function(spec, two_j), d = d_function(spec, two_j);
      const TwoVarSeries se = specialize_t(qshift(closed_expansion(spec, ExpansionMode::se(), n), -spec.delta), two_j);
      const TwoVarSeries sd = specialize_t(qshift(closed_expansion(spec, ExpansionMode::sd(), n), -spec.delta), two_j);
      CHECK(compare(se, c.polynomial + theta_series(c.fn, spec.a, n), n).equal);
      CHECK(compare(sd, d.polynomial + theta_series(d.fn, spec.a, n), n).equal);
    }
  }
}

TEST_CASE("polynomial part of the example") {
  const F0Spec spec = example();
  const XYSets sets = xy_sets(spec);
  REQUIRE(sets.y_minus_x.size() == 1);
  REQUIRE(sets.x_minus_y.size() == 1);
  CHECK(sets.y_minus_x[0].eps == std::vector<int>{-1, -1, -1});
  CHECK(sets.y_minus_x[0].m == 1);
  CHECK(sets.x_minus_y[0].eps == std::vector<int>{1, 1, 1});
  CHECK(sets.x_minus_y[0].m == -1);

  TwoVarSeries expected;
  expected.add_term(Rational(1, 3), TLaurent::monomial(2, 1) + TLaurent::monomial(-2, 1));
  CHECK(polynomial_part(spec, 0, CoefficientKind::C) == expected);
  CHECK(polynomial_part(spec, 0, CoefficientKind::D).is_zero());
  for (std::int64_t two_j : {2, 4, 6})
    CHECK(c_function(spec, two_j).polynomial + d_function(spec, two_j).polynomial == specialize_t(expected, two_j));
}

TEST_CASE("theta support classes") {
  const F0Spec spec = example();
  const SupportClasses s = support_classes(spec, 2);
  CHECK(s.modulus == 96);
  CHECK(s.residue == 16);
  CHECK(s.k == std::vector<std::int64_t>{16, 64});
  CHECK(s.s_full[0] == std::vector<std::int64_t>{4, 20, 28, 44, 52, 68, 76, 92});
  CHECK(s.s_full[1] == std::vector<std::int64_t>{8, 16, 32, 40, 56, 64, 80, 88});
  // every n in the support of D lands in one class
  for (std::int64_t n = 1; n < 96; ++n) {
    if (coefficient_at(spec, CoefficientKind::D, n).is_zero() && coefficient_at(spec, CoefficientKind::C, n).is_zero())
      continue;
    CHECK((n * n) % 48 == 16);
    int hits = 0;
    for (const auto& cls : s.s_full) hits += std::count(cls.begin(), cls.end(), n);
    CHECK(hits == 1);
  }
}

TEST_CASE("radial limits") {
  SUBCASE("odd character mod 4") {
    auto chi = [](std::int64_t n) {
      const std::int64_t r = ((n % 4) + 4) % 4;
      return std::complex<double>(r == 1 ? 1.0 : r == 3 ? -1.0 : 0.0);
    };
    const RadialLimit r = radial_limit_estimate(chi, 1);
    CHECK(std::abs(r.estimate - 0.5) < 1e-9);
    CHECK(r.error < 1e-8);
    CHECK(r.taus.size() == 10);
  }
  SUBCASE("divergent input") {
    CHECK_THROWS_WITH_AS(radial_limit_estimate([](std::int64_t) { return std::complex<double>(1.0); }, 1),
                         doctest::Contains("divergence detected"), std::runtime_error);
  }
  SUBCASE("C-series of the example against the Hurwitz oracle") {
    const F0Spec spec = example();
    for (std::int64_t two_j : {2, 4}) {
      const CoefficientData c = c_function(spec, two_j);
      const auto values = numeric_coefficients(c.fn);
      for (auto [p, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {1, 2}, {1, 3}}) {
        const std::int64_t period = std::lcm(c.fn.period, 2 * spec.a * r);
        auto twisted = [&](std::int64_t n) {
          const double phase = 2 * std::numbers::pi * static_cast<double>((p * n * n) % (4 * spec.a * r)) /
                               static_cast<double>(4 * spec.a * r);
          return values(n) * std::polar(1.0, phase);
        };
        std::complex<double> mean = 0;
        for (std::int64_t n = 0; n < period; ++n) mean += twisted(n);
        if (std::abs(mean) > 1e-9) continue;
        CAPTURE(two_j);
        CAPTURE(p);
        CAPTURE(r);
        const RadialLimit est = radial_limit_estimate(values, spec.a, p, r, 14);
        CHECK(std::abs(est.estimate - hurwitz_limit(twisted, period)) < 1e-7);
      }
    }
  }
}
