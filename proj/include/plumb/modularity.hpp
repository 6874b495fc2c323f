#pragma once

// Periodic coefficient functions behind the three-fiber closed forms at a
// root of unity t = omega, their polynomial corrections, theta support classes
// and a numerical radial-limit probe.

#include "plumb/closed_form.hpp"
#include "plumb/series.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace plumb {

/// Pairs (eps, m), m odd, with n = sum eps_i abar_i + m A.
struct FiberTerm {
  std::vector<int> eps;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// C(eps, m) = -(1/2) prod eps [t^{sum eps + m} + t^{-(sum eps + m)}]
TLaurent c_coefficient(const std::vector<int>& eps, std::int64_t m);
/// D(eps, m) = prod eps [t^{sum eps + m} - t^{-(sum eps + m)}]
TLaurent d_coefficient(const std::vector<int>& eps, std::int64_t m);

enum class CoefficientKind { C, D };

/// Sum of C (or D) over the pairs (eps, m) with sum eps_i abar_i + m A = n, t symbolic.
TLaurent coefficient_at(const F0Spec& spec, CoefficientKind kind, std::int64_t n);

struct PeriodicCoeffFn {
  enum class Parity { Odd, Even };

  std::int64_t period = 0;   // 2 A j
  std::int64_t modulus = 0;  // 2 j
  Parity parity = Parity::Odd;
  std::vector<TLaurent> table;  // table[r] for residues 0 <= r < period

  const TLaurent& operator()(std::int64_t n) const;
  bool is_odd() const;
  bool is_even() const;
  /// Sum over one period equals zero.
  bool mean_zero() const;
};

/// Y = {m > 0}, X = {n > 0}; both differences are finite.
struct XYSets {
  std::vector<FiberTerm> y_minus_x;
  std::vector<FiberTerm> x_minus_y;
};

XYSets xy_sets(const F0Spec& spec);

struct CoefficientData {
  PeriodicCoeffFn fn;
  TwoVarSeries polynomial;  // exact finite sum, t specialized mod 2j
};

/// Three fibers only. L_A(SE f0)(omega) = p_1(q) + sum_{n > 0} C(n; omega) q^{n^2/4A}.
CoefficientData c_function(const F0Spec& spec, std::int64_t two_j);
/// L_A(SD f0)(omega) = p_2(q) + sum_{n > 0} D(n; omega) q^{n^2/4A}.
CoefficientData d_function(const F0Spec& spec, std::int64_t two_j);

/// sum_{Y - X} - sum_{X - Y} of the mode's coefficient times q^{n^2/4A}; t stays
/// symbolic when two_j is 0.
TwoVarSeries polynomial_part(const F0Spec& spec, std::int64_t two_j, CoefficientKind kind);

struct SupportClasses {
  std::int64_t modulus = 0;     // 4 A j
  std::int64_t residue = 0;     // k: common value of n^2 mod 4A on the support
  std::vector<std::int64_t> k;  // k_i = 4 A i + k
  std::vector<std::vector<std::int64_t>> s;       // S_i
  std::vector<std::vector<std::int64_t>> s_full;  // S_i together with 4Aj - kappa
};

SupportClasses support_classes(const F0Spec& spec, std::int64_t j);

/// sum_{n > 0, n^2/4A <= bound} fn(n) q^{n^2/4A}.
TwoVarSeries theta_series(const PeriodicCoeffFn& fn, std::int64_t a, const Rational& bound);

struct RadialLimit {
  std::complex<double> estimate;
  double error = 0;
  std::vector<double> taus;
  std::vector<std::complex<double>> samples;
};

/// Limit as tau -> 0+ of sum_{n >= 0} c(n) (xi e^{-tau})^{n^2/4A} with xi = e^{2 pi i p/r},
/// by Richardson extrapolation over tau_0 / 2^i, i < steps. Throws std::runtime_error
/// ("divergence detected") when the samples grow under halving.
RadialLimit radial_limit_estimate(const std::function<std::complex<double>(std::int64_t)>& c, std::int64_t a,
                                  std::int64_t p = 0, std::int64_t r = 1, int steps = 10, double tau0 = 0.05);

/// c(n) of a table at omega = e^{2 pi i omega_index / 2j}.
std::function<std::complex<double>(std::int64_t)> numeric_coefficients(const PeriodicCoeffFn& fn,
                                                                       std::int64_t omega_index = 1);

}  // namespace plumb
