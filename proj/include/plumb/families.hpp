#pragma once

// Admissible families W_d(n): the symmetric-expansion family W-hat for every
// degree, and the two-parameter family on degrees <= 4.

#include "plumb/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace plumb {

struct AdmissibleFamily {
  enum class Kind { What, Parametric };

  Kind kind = Kind::What;
  Rational w3at1{1, 2};  // W_3(1), Parametric only
  Rational w4at0{0};     // W_4(0), Parametric only

  static AdmissibleFamily what_family() { return {}; }
  static AdmissibleFamily parametric(Rational w3, Rational w4) { return {Kind::Parametric, w3, w4}; }

  /// W_d(n) for this family. Throws PreconditionError for Parametric with d >= 5.
  Rational operator()(int d, std::int64_t n) const;

  /// "what" or "param:w3=p/q,w4=p/q"
  std::string descriptor() const;
};

/// "what" | "param:w3=<p/q>,w4=<p/q>" (either key may be omitted: defaults 1/2 and 0).
AdmissibleFamily parse_family(std::string_view text);

/// Number of compositions of n into r odd positive parts (r >= 1, n >= 0).
Integer odd_composition_count(std::int64_t n, int r);

/// Coefficient of z^{-n} in the symmetric expansion of (z - 1/z)^{2-d}.
Rational what(int d, std::int64_t n);

/// Two-parameter family, d in {1,2,3,4}.
Rational parametric_w(const Rational& w3at1, const Rational& w4at0, int d, std::int64_t n);

/// prod_i W_{delta_i}(l_i).
Rational product_weight(const AdmissibleFamily& family, const IntVector& degrees, const IntVector& l);

/// Values n with W_d(n) != 0: n = parity (mod 2), min_abs <= |n|, optionally one sign only.
struct SupportRange {
  int parity = 0;
  std::int64_t min_abs = 0;
  bool positive = true;  // n > 0 allowed
  bool negative = true;  // n < 0 allowed
  bool zero = true;      // n = 0 allowed (when parity permits)
  std::optional<std::int64_t> max_abs;  // finite support (degrees 1 and 2)

  bool contains(std::int64_t n) const;
};

SupportRange support_range(const AdmissibleFamily& family, int d);

}  // namespace plumb
