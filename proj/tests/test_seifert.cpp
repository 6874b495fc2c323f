#include "doctest.h"

#include "plumb/errors.hpp"
#include "plumb/seifert.hpp"

#include <numeric>
#include <random>

using namespace plumb;

namespace {

Rational euler_number(const SeifertData& sd) {
  Rational e = -sd.b;
  for (const auto& p : sd.pairs) e += Rational(p.b, p.a);
  return e;
}

}  // namespace

TEST_CASE("Seifert parsing") {
  const SeifertData sd = parse_seifert("M(2; 2/1, 3/1, 2/1)");
  CHECK(sd.b == 2);
  CHECK(sd.pairs == std::vector<SeifertPair>{{2, 1}, {3, 1}, {2, 1}});
  CHECK(parse_seifert("M(2;(2,1),(3,1),(2,1))") == sd);
  CHECK(to_string(sd) == "M(2; 2/1, 3/1, 2/1)");
  CHECK_THROWS_AS(parse_seifert("M(2; 2/1"), ParseError);
  CHECK_THROWS_AS(parse_seifert("N(2; 2/1)"), ParseError);
  CHECK_THROWS_AS(parse_seifert("M(x; 2/1)"), ParseError);
}

TEST_CASE("normalization keeps the Euler number") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> order(1, 12), shift(-30, 30), base(-5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    SeifertData sd{base(rng), {}};
    for (int i = 0; i < 3 + trial % 3; ++i) {
      const std::int64_t a = order(rng);
      std::int64_t b = shift(rng);
      while (std::gcd(a, b) != 1) ++b;
      sd.pairs.push_back({a, b});
    }
    const SeifertData n = normalize(sd);
    CHECK(euler_number(n) == euler_number(sd));
    for (const auto& p : n.pairs) {
      CHECK(p.b >= 0);
      CHECK(p.b < p.a);
    }
    CHECK(normalize(n) == n);
  }
  CHECK_THROWS_AS(normalize({0, {{4, 2}}}), PreconditionError);
  CHECK_THROWS_AS(normalize({0, {{0, 1}}}), PreconditionError);
}

TEST_CASE("negative continued fractions of 500 random fractions") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::int64_t> num(2, 400);
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t a = num(rng);
    std::int64_t b = std::uniform_int_distribution<std::int64_t>(1, a - 1)(rng);
    while (std::gcd(a, b) != 1) b = b % (a - 1) + 1;
    const ContinuedFraction cf = continued_fraction(a, b);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(cf.evaluate() == Rational(a, b));
    for (auto c : cf.terms) CHECK(c >= 2);
  }
  CHECK(continued_fraction(7, 2).terms == std::vector<std::int64_t>{4, 2});
  CHECK(continued_fraction(5, 4).terms == std::vector<std::int64_t>{2, 2, 2, 2});
  CHECK(continued_fraction(3, 1).terms == std::vector<std::int64_t>{3});
  CHECK_THROWS_AS(continued_fraction(4, 2), PreconditionError);
}

TEST_CASE("star graphs") {
  const PlumbingGraph g = star_graph(parse_seifert("M(2; 7/2, 3/1, 2/1)"));
  CHECK(g.size() == 5);
  CHECK(g.vertices()[g.index_of("c")].weight == -2);
  CHECK(g.vertices()[g.index_of("f1.1")].weight == -4);
  CHECK(g.vertices()[g.index_of("f1.2")].weight == -2);
  CHECK(g.adjacent(g.index_of("c"), g.index_of("f1.1")));
  CHECK(g.adjacent(g.index_of("f1.1"), g.index_of("f1.2")));

  // a_i = 1 pairs fold into b and add no leg
  const PlumbingGraph h = star_graph(parse_seifert("M(3; 2/1, 3/1, 2/1, 1/1)"));
  CHECK(h.size() == 4);
  CHECK(h.vertices()[h.index_of("c")].weight == -2);
}

TEST_CASE("fiber and splice constants") {
  const SeifertData sd = parse_seifert("M(2; 2/1, 3/1, 2/1)");
  const FiberConstants f = fiber_constants(sd);
  CHECK(f.a_product == 12);
  CHECK(f.abar == std::vector<Integer>{6, 4, 6});
  CHECK(f.abarbar(0, 1) == 2);
  CHECK(f.abarbar(0, 2) == 3);
  CHECK(f.abarbar(1, 2) == 2);
  CHECK(f.abarbar(1, 1) == 0);

  const SpliceConstants s = splice_constants(sd);
  CHECK(s.order == 8);
  CHECK(s.det == 8);
  CHECK(s.matrix.size() == 4);

  const SeifertData trivial{1, {{1, 1}, {1, 1}, {1, 1}}};
  const FiberConstants t = fiber_constants(trivial);
  CHECK(t.a_product == 1);
  CHECK(t.abar == std::vector<Integer>{1, 1, 1});
  CHECK(leg_fiber_constants(trivial).abar.empty());
  CHECK_THROWS_WITH_AS(splice_constants(trivial), doctest::Contains("not negative definite"), PreconditionError);
}
