#pragma once

// Closed forms for star-shaped plumbings: Laplace transforms of the two-region
// expansions of
//   f0(z, t) = prod_i (z^{abar_i} t^{-1} - z^{-abar_i} t) / (z^A t^{-1} - z^{-A} t)^{k-2},
// plus the explicit region sums for the H-shaped and 4-valent star graphs.

#include "plumb/lattice.hpp"
#include "plumb/seifert.hpp"
#include "plumb/series.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace plumb {

/// With y = z^A t^{-1}: the |y| < 1 expansion is "inner", |y| > 1 is "outer".
/// SE = (inner + outer)/2, AE(w) = (1 - w) inner + w outer, SD = inner - outer.
struct ExpansionMode {
  enum class Kind { Symmetric, Asymmetric, Difference };
  Kind kind = Kind::Symmetric;
  Rational y{1, 2};

  static ExpansionMode se() { return {}; }
  static ExpansionMode ae(Rational w) { return {Kind::Asymmetric, std::move(w)}; }
  static ExpansionMode sd() { return {Kind::Difference, 0}; }

  Rational inner_weight() const;
  Rational outer_weight() const;
  std::string descriptor() const;
};

/// "se" | "ae:p/q" | "sd"
ExpansionMode parse_mode(std::string_view text);

struct F0Spec {
  SeifertData seifert;  // normalized
  std::int64_t a = 1;   // A
  std::vector<std::int64_t> abar;
  int k = 0;            // legs
  std::int64_t h = 1;   // |det M|
  Rational delta;
  QuadraticFormContext ctx;
  Eigen::Index node = 0;
  std::vector<Eigen::Index> leaves;  // matrix positions of the leg ends, leg order
};

/// Builds the star plumbing, its quadratic form and the offset Delta. Requires
/// at least three legs and a negative definite plumbing.
F0Spec f0_spec(const SeifertData& sd);

/// z^n t^t with n = sum eps_i abar_i + m A and t = -(sum eps_i) - m.
struct ExpansionTerm {
  std::vector<int> eps;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t t = 0;
  Rational c;
};

/// Coefficient of y^m in the inner (m > 0) or outer (m < 0) expansion of (y - 1/y)^{2-k}.
Rational inner_coefficient(int k, std::int64_t m);
Rational outer_coefficient(int k, std::int64_t m);

/// Every nonzero term with n^2/4A <= bound, sorted by (m, eps).
std::vector<ExpansionTerm> f0_terms(const F0Spec& spec, const ExpansionMode& mode, const Rational& bound);

/// H (prefactor + l^T Q l / 4) - n(l)^2 / 4A, evaluated on every leaf sign pattern
/// and several node values; throws ConsistencyError("offset not constant") if
/// the witnesses disagree.
Rational delta_offset(const QuadraticFormContext& ctx, std::int64_t a, const std::vector<std::int64_t>& abar,
                      Eigen::Index node, const std::vector<Eigen::Index>& leaves);

/// q^Delta L_A(mode(f0)), with L_A cut at n^2/4A <= bound; exact through q^(Delta + bound).
TwoVarSeries closed_expansion(const F0Spec& spec, const ExpansionMode& mode, const Rational& bound);
TwoVarSeries zhathat_closed(const F0Spec& spec, const Rational& bound);
/// Requires exactly three legs.
TwoVarSeries p_infty_closed_3fiber(const F0Spec& spec, const Rational& w3at1, const Rational& bound);

/// Both engines in the common scale P(t^2, q^H) = q^Delta L_A(...), exact through q^order.
TwoVarSeries lattice_final_scale(const F0Spec& spec, const AdmissibleFamily& family, const Rational& order);
TwoVarSeries closed_final_scale(const F0Spec& spec, const ExpansionMode& mode, const Rational& order);

/// Two adjacent degree-3 nodes, each carrying two leaves.
struct HShape {
  Eigen::Index node_a = 0, node_b = 1;
  std::vector<Eigen::Index> leaves;
};
/// One degree-4 node carrying four leaves.
struct FourStar {
  Eigen::Index node = 0;
  std::vector<Eigen::Index> leaves;
};

/// Throw PreconditionError on a shape mismatch.
HShape detect_hshape(const QuadraticFormContext& ctx);
FourStar detect_fourstar(const QuadraticFormContext& ctx);

/// Region sums in the P(t^2, q) convention of p_infty_total; `bound` limits l^T Q l / 4.
TwoVarSeries hshape_closed(const QuadraticFormContext& ctx, const Rational& w3at1, const Rational& bound);
TwoVarSeries fourstar_closed(const QuadraticFormContext& ctx, const Rational& w3at1, const Rational& w4at0,
                             const Rational& bound);

/// t = 1 pieces of the H-shape: S1 over node values both positive, S2 over
/// (positive, negative); P(1, q) = y1 S1 + y2 S2 with y1 = 2w^2 - 2w + 1, y2 = y1 - 1.
struct HShapeTOne {
  TwoVarSeries same_sign;
  TwoVarSeries mixed_sign;
};
HShapeTOne hshape_t_one(const QuadraticFormContext& ctx, const Rational& bound);
Rational hshape_y1(const Rational& w3at1);

/// q^prefactor sum over even node values of prod eps q^{l^T Q l / 4}: the
/// 4-star correction P(1, q) - zhat(q) = W_4(0) * theta.
TwoVarSeries fourstar_theta(const QuadraticFormContext& ctx, const Rational& bound);

}  // namespace plumb
