#pragma once

// Truncated lattice sums over delta + 2Z^s for a negative definite plumbing,
// and the unreduced sum over x in Z^s that they are derived from.

#include "plumb/families.hpp"
#include "plumb/plumbing.hpp"
#include "plumb/series.hpp"

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace plumb {

struct QuadraticFormContext {
  PlumbingMatrix plumbing;
  RatMatrix minv;        // M^{-1}
  RatMatrix q;           // -M^{-1}, positive definite
  Rational prefactor;    // -(3s + m.u)/4
  UpperLdl<Rational> ldl;
  Integer order;         // |det M|
  IntMatrix mprime;      // |det M| M^{-1}

  Eigen::Index size() const noexcept { return plumbing.size(); }
};

/// Throws PreconditionError when M is not negative definite or a vertex has degree 0.
QuadraticFormContext make_context(const PlumbingMatrix& pm);

struct LatticePoint {
  std::vector<std::int64_t> l;
  Rational weight;       // prod W_{delta_i}(l_i)
  Rational q_exponent;   // l^T Q l / 4, before the prefactor
  std::int64_t t_exponent = 0;  // l.u
};

/// Every l in delta + 2Z^s with nonzero weight and l^T Q l / 4 <= n, sorted
/// lexicographically. Leaves range over {-1, 1}, joints are 0.
std::vector<LatticePoint> enumerate_lattice(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                                            const Rational& n);

/// P(t^2, q) = q^prefactor sum_l W(l) q^{l^T Q l / 4} t^{l.u}, stored with t-exponent l.u.
/// `n` bounds the quadratic part; the result is exact through q^(prefactor + n).
TwoVarSeries p_infty_total(const QuadraticFormContext& ctx, const AdmissibleFamily& family, const Rational& n);

/// Restriction of the total sum to the coset of one spin^c class.
TwoVarSeries p_infty_spinc(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                           const SpinCClass& cls, const Rational& n);

/// One series per class, in the order given, from a single enumeration.
std::vector<TwoVarSeries> p_infty_by_spinc(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                                           const std::vector<SpinCClass>& classes, const Rational& n);

/// l - rep in 2M Z^s, tested as M'(l - rep) = 0 mod 2|det M| in integers.
bool in_coset(const QuadraticFormContext& ctx, const std::vector<std::int64_t>& l, const IntVector& rep);

/// Data of the x-sum for one spin^c representative k in m + 2Z^s.
struct SpinCWeightData {
  IntVector k;
  Rational theta;     // (k.u - <u,u>)/2
  Rational k_square;  // (k - Mu)^T M^{-1} (k - Mu)

  /// chi_k(x) = -(k.x + <x,x>)/2
  Rational chi(const IntMatrix& m, const IntVector& x) const;
  /// -((k-Mu)^2 + 3s + sum m)/4 + 2 chi_k(x) + <x,u>
  Rational epsilon(const IntMatrix& m, const IntVector& x) const;
  /// prod_i W_{delta_i}((2Mx + k - Mu)_i)
  Rational weight(const AdmissibleFamily& family, const PlumbingMatrix& pm, const IntVector& x) const;
};

/// k = rep + Mu for a class from enumerate_spinc.
SpinCWeightData spinc_weight_data(const QuadraticFormContext& ctx, const SpinCClass& cls);

/// sum_x W_{Gamma,k}(x) q^{eps_k(x)} t^{Theta_k + <x,u>} straight from the definitions,
/// over every x whose quadratic part is <= n (same bound convention as p_infty_spinc).
/// The t-variable here is the square root of the one in p_infty_spinc.
TwoVarSeries direct_from_definition(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                                    const SpinCClass& cls, const Rational& n);

struct NeumannStep {
  NeumannMove kind = NeumannMove::BlowupLeaf;
  MoveSite site;
  std::size_t vertices = 0;  // after the move
  ComparisonResult result;
};

struct NeumannWalk {
  std::vector<NeumannStep> steps;
  PlumbingGraph final_graph;
  bool all_equal = true;
};

std::string_view move_name(NeumannMove kind);

/// Seeded random walk of `moves` Neumann moves, comparing P(t^2, q) through
/// q^order after each move with the value on the starting graph. Blowdowns are
/// taken with probability 1/2 when available; no move creates degree > 4.
NeumannWalk neumann_walk(const PlumbingGraph& start, const AdmissibleFamily& family, const Rational& order,
                         std::uint64_t seed, int moves);

/// Worker count: PLUMB_ZHAT_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

}  // namespace plumb
