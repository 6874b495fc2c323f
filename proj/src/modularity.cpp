#include "plumb/modularity.hpp"

#include "plumb/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace plumb {

namespace {

void require_three_fibers(const F0Spec& spec) {
  if (spec.k != 3) throw PreconditionError("k != 3: periodic coefficient data needs three fibers, got " + std::to_string(spec.k));
}

std::int64_t fiber_shift(const F0Spec& spec, const std::vector<int>& eps) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) s += eps[i] * spec.abar[i];
  return s;
}

std::vector<std::vector<int>> three_signs() {
  std::vector<std::vector<int>> out;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) out.push_back({a, b, c});
  return out;
}

TLaurent coefficient_of(CoefficientKind kind, const FiberTerm& f) {
  return kind == CoefficientKind::C ? c_coefficient(f.eps, f.m) : d_coefficient(f.eps, f.m);
}

std::int64_t reduce(std::int64_t n, std::int64_t p) { return ((n % p) + p) % p; }

CoefficientData build(const F0Spec& spec, std::int64_t two_j, CoefficientKind kind) {
  require_three_fibers(spec);
  if (two_j < 2 || two_j % 2 != 0) throw PreconditionError("root-of-unity order 2j must be a positive even integer");
  CoefficientData out;
  out.fn.modulus = two_j;
  out.fn.period = spec.a * two_j;
  out.fn.parity = kind == CoefficientKind::C ? PeriodicCoeffFn::Parity::Odd : PeriodicCoeffFn::Parity::Even;
  for (std::int64_t r = 0; r < out.fn.period; ++r)
    out.fn.table.push_back(specialize_t(coefficient_at(spec, kind, r), two_j));
  out.polynomial = polynomial_part(spec, two_j, kind);
  return out;
}

}  // namespace

TLaurent c_coefficient(const std::vector<int>& eps, std::int64_t m) {
  std::int64_t sign = 1, e = m;
  for (int v : eps) {
    sign *= v;
    e += v;
  }
  TLaurent p;
  p.add_term(e, Rational(-sign, 2));
  p.add_term(-e, Rational(-sign, 2));
  return p;
}

TLaurent d_coefficient(const std::vector<int>& eps, std::int64_t m) {
  std::int64_t sign = 1, e = m;
  for (int v : eps) {
    sign *= v;
    e += v;
  }
  TLaurent p;
  p.add_term(e, Rational(sign));
  p.add_term(-e, Rational(-sign));
  return p;
}

TLaurent coefficient_at(const F0Spec& spec, CoefficientKind kind, std::int64_t n) {
  require_three_fibers(spec);
  TLaurent sum;
  for (const auto& eps : three_signs()) {
    const std::int64_t r = n - fiber_shift(spec, eps);
    if (r % spec.a != 0) continue;
    const std::int64_t m = r / spec.a;
    if (m % 2 == 0) continue;
    sum += coefficient_of(kind, {eps, m, n});
  }
  return sum;
}

const TLaurent& PeriodicCoeffFn::operator()(std::int64_t n) const { return table[static_cast<std::size_t>(reduce(n, period))]; }

bool PeriodicCoeffFn::is_odd() const {
  for (std::int64_t r = 0; r < period; ++r)
    if ((*this)(-r) != scale((*this)(r), Rational(-1))) return false;
  return true;
}

bool PeriodicCoeffFn::is_even() const {
  for (std::int64_t r = 0; r < period; ++r)
    if ((*this)(-r) != (*this)(r)) return false;
  return true;
}

bool PeriodicCoeffFn::mean_zero() const {
  TLaurent sum;
  for (const auto& v : table) sum += v;
  return sum.is_zero();
}

XYSets xy_sets(const F0Spec& spec) {
  require_three_fibers(spec);
  XYSets out;
  std::int64_t spread = 0;
  for (auto v : spec.abar) spread += v;
  const std::int64_t mmax = spread / spec.a + 1;
  for (std::int64_t m = -mmax; m <= mmax; ++m) {
    if (m % 2 == 0) continue;
    for (const auto& eps : three_signs()) {
      const std::int64_t n = fiber_shift(spec, eps) + m * spec.a;
      const bool in_y = m > 0, in_x = n > 0;
      if (in_y && !in_x) out.y_minus_x.push_back({eps, m, n});
      if (in_x && !in_y) out.x_minus_y.push_back({eps, m, n});
    }
  }
  return out;
}

TwoVarSeries polynomial_part(const F0Spec& spec, std::int64_t two_j, CoefficientKind kind) {
  const XYSets sets = xy_sets(spec);
  TwoVarSeries p;
  auto put = [&](const FiberTerm& f, const Rational& sign) {
    TLaurent c = scale(coefficient_of(kind, f), sign);
    if (two_j != 0) c = specialize_t(c, two_j);
    p.add_term(laplace_exponent(f.n, spec.a), c);
  };
  for (const auto& f : sets.y_minus_x) put(f, 1);
  for (const auto& f : sets.x_minus_y) put(f, -1);
  return p;
}

CoefficientData c_function(const F0Spec& spec, std::int64_t two_j) { return build(spec, two_j, CoefficientKind::C); }
CoefficientData d_function(const F0Spec& spec, std::int64_t two_j) { return build(spec, two_j, CoefficientKind::D); }

SupportClasses support_classes(const F0Spec& spec, std::int64_t j) {
  require_three_fibers(spec);
  if (j < 1) throw PreconditionError("support classes need j >= 1");
  SupportClasses out;
  const std::int64_t four_a = 4 * spec.a;
  out.modulus = four_a * j;
  std::set<std::int64_t> residues;
  for (const auto& eps : three_signs())
    for (std::int64_t m = -1; m <= 1; m += 2) {
      const std::int64_t n = fiber_shift(spec, eps) + m * spec.a;
      residues.insert(reduce(n * n, four_a));
    }
  // n -> n + 2A changes n^2 by 4A(n + A), so these two odd m cover every residue class
  if (residues.size() != 1)
    throw ConsistencyError("n^2 mod 4A is not constant on the support");
  out.residue = *residues.begin();
  for (std::int64_t i = 0; i < j; ++i) {
    const std::int64_t ki = four_a * i + out.residue;
    out.k.push_back(ki);
    std::vector<std::int64_t> s;
    for (std::int64_t kappa = 1; kappa <= 2 * spec.a * j; ++kappa)
      if (reduce(kappa * kappa - ki, out.modulus) == 0) s.push_back(kappa);
    std::set<std::int64_t> merged(s.begin(), s.end());
    for (auto kappa : s) merged.insert(out.modulus - kappa);
    out.s.push_back(s);
    out.s_full.emplace_back(merged.begin(), merged.end());
  }
  return out;
}

TwoVarSeries theta_series(const PeriodicCoeffFn& fn, std::int64_t a, const Rational& bound) {
  TwoVarSeries out(bound);
  if (bound < 0) return out;
  const std::int64_t nmax = to_int64(isqrt(floor(4 * Rational(a) * bound)));
  for (std::int64_t n = 1; n <= nmax; ++n) out.add_term(laplace_exponent(n, a), fn(n));
  return out;
}

std::function<std::complex<double>(std::int64_t)> numeric_coefficients(const PeriodicCoeffFn& fn,
                                                                       std::int64_t omega_index) {
  std::vector<std::complex<double>> values;
  const std::complex<double> omega =
      std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(omega_index) / static_cast<double>(fn.modulus));
  for (const auto& v : fn.table) values.push_back(evaluate(v, omega));
  const std::int64_t period = fn.period;
  return [values, period](std::int64_t n) { return values[static_cast<std::size_t>(reduce(n, period))]; };
}

RadialLimit radial_limit_estimate(const std::function<std::complex<double>(std::int64_t)>& c, std::int64_t a,
                                  std::int64_t p, std::int64_t r, int steps, double tau0) {
  if (steps < 3) throw std::invalid_argument("radial limit needs at least three steps");
  if (r < 1) throw std::invalid_argument("root of unity needs a positive order");
  RadialLimit out;
  const double four_a = 4.0 * static_cast<double>(a);
  for (int i = 0; i < steps; ++i) {
    const double tau = tau0 / std::pow(2.0, i);
    std::complex<double> sum = c(0);
    for (std::int64_t n = 1;; ++n) {
      const double e = static_cast<double>(n) * static_cast<double>(n) / four_a;
      if (tau * e > 45.0) break;
      // xi^{n^2/4A} = e^{2 pi i p n^2 / 4Ar}, phase reduced exactly first
      const std::int64_t den = 4 * a * r;
      const std::int64_t num = reduce(reduce(p, den) * reduce(n * n, den) % den, den);
      const double phase = 2 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
      sum += c(n) * std::polar(std::exp(-tau * e), phase);
    }
    out.taus.push_back(tau);
    out.samples.push_back(sum);
  }
  const auto& f = out.samples;
  const auto last = f.size() - 1;
  const double base = std::max(std::abs(f[last - 2]), 1e-300);
  if (std::abs(f[last]) > 1.25 * 1.25 * base && std::abs(f[last - 1]) > 1.25 * base)
    throw std::runtime_error("divergence detected: partial sums grow as tau -> 0");

  // Richardson on an expansion in integer powers of tau
  std::vector<std::complex<double>> level = f;
  std::complex<double> previous = level.back();
  for (int k = 1; k < steps; ++k) {
    const double factor = std::pow(2.0, k);
    std::vector<std::complex<double>> next;
    for (std::size_t i = 0; i + 1 < level.size(); ++i) next.push_back((factor * level[i + 1] - level[i]) / (factor - 1));
    previous = level.back();
    level = std::move(next);
  }
  out.estimate = level.back();
  out.error = std::abs(out.estimate - previous);
  return out;
}

}  // namespace plumb
