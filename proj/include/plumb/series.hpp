#pragma once

// Exact two-variable series: rational powers of q with Laurent polynomials in t
// as coefficients, truncated at a rational q-order.

#include "plumb/scalar.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumb {

/// Laurent polynomial in t with rational coefficients. With a modulus 2j the
/// variable is a 2j-th root of unity and exponents live in [0, 2j).
class TLaurent {
 public:
  TLaurent() = default;
  explicit TLaurent(std::optional<std::int64_t> modulus) : modulus_(modulus) {}
  static TLaurent monomial(std::int64_t e, const Rational& c, std::optional<std::int64_t> modulus = {});

  const std::map<std::int64_t, Rational>& coefficients() const noexcept { return coeffs_; }
  std::optional<std::int64_t> modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Rational coefficient(std::int64_t e) const;

  /// Adds c t^e, reducing e when a modulus is set; zero results are erased.
  void add_term(std::int64_t e, const Rational& c);
  TLaurent& operator+=(const TLaurent& other);
  TLaurent& operator-=(const TLaurent& other);

  friend TLaurent operator+(TLaurent a, const TLaurent& b) { return a += b; }
  friend TLaurent operator-(TLaurent a, const TLaurent& b) { return a -= b; }
  friend bool operator==(const TLaurent& a, const TLaurent& b) {
    return a.coeffs_ == b.coeffs_ && (a.is_zero() || a.modulus_ == b.modulus_);
  }

 private:
  std::map<std::int64_t, Rational> coeffs_;
  std::optional<std::int64_t> modulus_;
};

/// c t^shift * p(t)
TLaurent scale(const TLaurent& p, const Rational& c, std::int64_t tshift = 0);
/// p(t^k)
TLaurent tpower(const TLaurent& p, std::int64_t k);
/// p(1/t)
TLaurent invert_t(const TLaurent& p);
/// Reduces exponents modulo 2j.
TLaurent specialize_t(const TLaurent& p, std::int64_t two_j);
/// Sum of coefficients; with a modulus the value at t = 1 is the same sum.
Rational at_t_one(const TLaurent& p);
std::complex<double> evaluate(const TLaurent& p, std::complex<double> t);
std::string to_text(const TLaurent& p);

/// sum_r q^r P_r(t), exact for every r <= truncation. An empty truncation means
/// the series is a finite sum known exactly (no terms are missing at any order).
class TwoVarSeries {
 public:
  TwoVarSeries() = default;
  explicit TwoVarSeries(std::optional<Rational> truncation) : truncation_(std::move(truncation)) {}

  const std::map<Rational, TLaurent>& terms() const noexcept { return terms_; }
  const std::optional<Rational>& truncation() const noexcept { return truncation_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  TLaurent coefficient(const Rational& q) const;

  /// Adds c q^qe t^te; terms beyond the truncation are ignored.
  void add_term(const Rational& qe, std::int64_t te, const Rational& c);
  void add_term(const Rational& qe, const TLaurent& p);
  void set_truncation(std::optional<Rational> n);

  TwoVarSeries& operator+=(const TwoVarSeries& other);
  TwoVarSeries& operator-=(const TwoVarSeries& other);
  friend TwoVarSeries operator+(TwoVarSeries a, const TwoVarSeries& b) { return a += b; }
  friend TwoVarSeries operator-(TwoVarSeries a, const TwoVarSeries& b) { return a -= b; }
  friend bool operator==(const TwoVarSeries& a, const TwoVarSeries& b) {
    return a.terms_ == b.terms_ && a.truncation_ == b.truncation_;
  }

 private:
  std::map<Rational, TLaurent> terms_;
  std::optional<Rational> truncation_;
};

TwoVarSeries add(const TwoVarSeries& a, const TwoVarSeries& b);
TwoVarSeries subtract(const TwoVarSeries& a, const TwoVarSeries& b);
/// Every coefficient multiplied by c t^tshift.
TwoVarSeries scale(const TwoVarSeries& s, const Rational& c, std::int64_t tshift = 0);
/// q^delta * s; the truncation moves with it.
TwoVarSeries qshift(const TwoVarSeries& s, const Rational& delta);
/// s(t, q^k) for a positive integer k.
TwoVarSeries qpower(const TwoVarSeries& s, std::int64_t k);
/// s(t^k, q).
TwoVarSeries tpower(const TwoVarSeries& s, std::int64_t k);
TwoVarSeries specialize_t(const TwoVarSeries& s, std::int64_t two_j);
/// s(1, q), stored as a series whose coefficients are constants.
TwoVarSeries at_t_one(const TwoVarSeries& s);
/// Drops terms above n and lowers the truncation to n (never raises it).
TwoVarSeries truncate(const TwoVarSeries& s, const Rational& n);

struct LaplaceTerm {
  std::int64_t n = 0;  // z-exponent
  std::int64_t m = 0;  // t-exponent
  Rational c;
};

/// z^n t^m -> q^{n^2/4A} t^m, dropping n^2/4A > N.
TwoVarSeries laplace_transform(const std::vector<LaplaceTerm>& terms, std::int64_t a, const Rational& n);
/// q-exponent n^2 / 4A.
Rational laplace_exponent(std::int64_t n, std::int64_t a);

struct SeriesDifference {
  Rational q;
  std::int64_t t = 0;
  Rational left;
  Rational right;
};

struct ComparisonResult {
  bool equal = true;
  std::optional<SeriesDifference> first_difference;
};

/// Exact comparison of every term with q-exponent <= n. Throws
/// std::invalid_argument("insufficient truncation") if either side stops before n.
ComparisonResult compare(const TwoVarSeries& a, const TwoVarSeries& b, const Rational& n);

std::string to_text(const TwoVarSeries& s);
std::string to_json(const TwoVarSeries& s, int indent = -1);
TwoVarSeries series_from_json(const std::string& text);
/// Rows "q,t,c" with a header line.
std::string to_csv(const TwoVarSeries& s);
std::string to_text(const SeriesDifference& d);

}  // namespace plumb
