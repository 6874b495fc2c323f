#pragma once

// Seifert fibered spaces M(b; (a_1,b_1), ..., (a_k,b_k)) as star-shaped
// plumbings, and the fiber constants the closed forms are written in.

#include "plumb/plumbing.hpp"
#include "plumb/scalar.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace plumb {

struct SeifertPair {
  std::int64_t a = 1;
  std::int64_t b = 0;

  friend bool operator==(const SeifertPair&, const SeifertPair&) = default;
};

struct SeifertData {
  std::int64_t b = 0;
  std::vector<SeifertPair> pairs;

  friend bool operator==(const SeifertData&, const SeifertData&) = default;
};

/// Brings every b_i into [0, a_i) and moves the integer parts into b. The
/// rational Euler number -b + sum b_i/a_i is unchanged. Throws on a_i < 1 or
/// gcd(a_i, b_i) != 1.
SeifertData normalize(const SeifertData& sd);

/// Parses "M(b; a1/b1, a2/b2, ...)"; "(a,b)" pairs are also accepted.
SeifertData parse_seifert(std::string_view text);

/// Negative (Hirzebruch-Jung) continued fraction a/b = c_1 - 1/(c_2 - ...).
struct ContinuedFraction {
  std::vector<std::int64_t> terms;

  Rational evaluate() const;
};

/// Canonical expansion with all c_i >= 2. Requires a >= 2 and gcd(a, b) = 1;
/// b is reduced into (0, a) first. Throws PreconditionError if a divides b.
ContinuedFraction continued_fraction(std::int64_t a, std::int64_t b);

/// Node "c" of weight -b; leg i (1-based) is f<i>.1 - f<i>.2 - ... with weights
/// -c_1, -c_2, ..., the node attached to f<i>.1. Pairs with a_i = 1 add no leg.
/// The data is normalized first.
PlumbingGraph star_graph(const SeifertData& sd);

/// A = prod a_i and its quotients, over all pairs as given (a_i = 1 included).
struct FiberConstants {
  Integer a_product;                 // A
  std::vector<Integer> abar;         // A / a_i
  IntMatrix abarbar;                 // A / (a_i a_j) off the diagonal, 0 on it
  std::vector<std::int64_t> orders;  // a_i
};

FiberConstants fiber_constants(const SeifertData& sd);
/// Same constants restricted to the pairs that produce a leg (a_i > 1 after normalization).
FiberConstants leg_fiber_constants(const SeifertData& sd);

struct SpliceConstants {
  FiberConstants fibers;
  PlumbingGraph graph;
  PlumbingMatrix matrix;
  Integer det;
  Integer order;     // |H| = |det M|
  IntMatrix mprime;  // (-1)^s adj M
};

/// Throws PreconditionError("not negative definite") when the star plumbing is not.
SpliceConstants splice_constants(const SeifertData& sd);

std::string to_string(const SeifertData& sd);

}  // namespace plumb
