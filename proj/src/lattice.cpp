#include "plumb/lattice.hpp"

#include "plumb/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

namespace plumb {

namespace {

// Integers of parity p with d (v - c)^2 <= r, visited outward from c.
template <typename Visit>
void for_each_in_window(const Rational& c, const Rational& d, const Rational& r, int parity, Visit&& visit) {
  Integer start = floor(c);
  if (((start % 2) + 2) % 2 != parity) start += 1;
  auto fits = [&](const Integer& v) {
    const Rational diff = Rational(v) - c;
    return d * diff * diff <= r;
  };
  for (Integer v = start; fits(v); v += 2) visit(v);
  for (Integer v = start - 2; fits(v); v -= 2) visit(v);
}

struct Enumerator {
  const QuadraticFormContext& ctx;
  const AdmissibleFamily& family;
  std::vector<SupportRange> support;
  Eigen::Index s;

  Enumerator(const QuadraticFormContext& c, const AdmissibleFamily& f) : ctx(c), family(f), s(c.size()) {
    for (Eigen::Index i = 0; i < s; ++i) support.push_back(support_range(f, static_cast<int>(c.plumbing.degrees(i))));
  }

  Rational center(const std::vector<std::int64_t>& l, Eigen::Index i) const {
    Rational c = 0;
    for (Eigen::Index j = i + 1; j < s; ++j)
      if (l[static_cast<std::size_t>(j)] != 0) c -= ctx.ldl.u(i, j) * l[static_cast<std::size_t>(j)];
    return c;
  }

  // Assigns coordinates i, i-1, ..., stop and calls emit(l, remaining) for each completed assignment.
  template <typename Emit>
  void descend(std::vector<std::int64_t>& l, Eigen::Index i, Eigen::Index stop, const Rational& remaining,
               Emit&& emit) const {
    if (i < stop) {
      emit(l, remaining);
      return;
    }
    const Rational c = center(l, i);
    const Rational& d = ctx.ldl.d(i);
    const auto& range = support[static_cast<std::size_t>(i)];
    auto take = [&](const Integer& v) {
      const std::int64_t value = to_int64(v);
      if (!range.contains(value)) return;
      const Rational diff = Rational(v) - c;
      l[static_cast<std::size_t>(i)] = value;
      descend(l, i - 1, stop, remaining - d * diff * diff, emit);
      l[static_cast<std::size_t>(i)] = 0;
    };
    if (range.max_abs) {
      for (std::int64_t v = -*range.max_abs; v <= *range.max_abs; ++v) {
        const Rational diff = Rational(v) - c;
        if (d * diff * diff <= remaining) take(Integer(v));
      }
    } else {
      for_each_in_window(c, d, remaining, range.parity, take);
    }
  }

  LatticePoint finish(const std::vector<std::int64_t>& l, const Rational& total, const Rational& remaining) const {
    LatticePoint p;
    p.l = l;
    p.weight = 1;
    for (Eigen::Index i = 0; i < s; ++i)
      p.weight *= family(static_cast<int>(ctx.plumbing.degrees(i)), l[static_cast<std::size_t>(i)]);
    p.q_exponent = (total - remaining) / 4;
    for (auto v : l) p.t_exponent += v;
    return p;
  }
};

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("PLUMB_ZHAT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

QuadraticFormContext make_context(const PlumbingMatrix& pm) {
  for (Eigen::Index i = 0; i < pm.size(); ++i)
    if (pm.degrees(i) == 0)
      throw PreconditionError("vertex '" + pm.ids[static_cast<std::size_t>(i)] +
                              "' has degree 0; lattice sums need every vertex in an edge");
  if (!is_negative_definite(pm.entries)) throw PreconditionError("plumbing matrix is not negative definite");
  QuadraticFormContext ctx;
  ctx.plumbing = pm;
  ctx.minv = exact_inverse(to_rational(pm.entries));
  ctx.q = -ctx.minv;
  const auto s = pm.size();
  ctx.prefactor = Rational(-(3 * Integer(s) + pm.weights.sum()), Integer(4));
  ctx.ldl = upper_ldl(ctx.q);
  const auto adj = det_and_adjugate(pm.entries);
  ctx.order = adj.order;
  ctx.mprime = adj.adjugate;
  return ctx;
}

std::vector<LatticePoint> enumerate_lattice(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                                            const Rational& n) {
  if (n < 0) return {};
  const Enumerator en(ctx, family);
  const Rational total = 4 * n;
  const Eigen::Index s = ctx.size();

  // Fix every non-node coordinate first (the cheap, bounded ones), then split
  // the remaining node search across workers.
  Eigen::Index nodes = 0;
  while (nodes < s && ctx.plumbing.roles[static_cast<std::size_t>(nodes)] == VertexRole::Node) ++nodes;
  struct Prefix {
    std::vector<std::int64_t> l;
    Rational remaining;
  };
  std::vector<Prefix> prefixes;
  {
    std::vector<std::int64_t> l(static_cast<std::size_t>(s), 0);
    en.descend(l, s - 1, nodes, total,
               [&](const std::vector<std::int64_t>& v, const Rational& r) { prefixes.push_back({v, r}); });
  }

  std::vector<std::vector<LatticePoint>> found(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < prefixes.size(); idx = next++) {
      std::vector<std::int64_t> l = prefixes[idx].l;
      en.descend(l, nodes - 1, 0, prefixes[idx].remaining, [&](const std::vector<std::int64_t>& v, const Rational& r) {
        auto p = en.finish(v, total, r);
        if (p.weight != 0) found[idx].push_back(std::move(p));
      });
    }
  };
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(prefixes.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<LatticePoint> out;
  for (auto& chunk : found)
    for (auto& p : chunk) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) { return a.l < b.l; });
  return out;
}

TwoVarSeries p_infty_total(const QuadraticFormContext& ctx, const AdmissibleFamily& family, const Rational& n) {
  TwoVarSeries out(ctx.prefactor + n);
  for (const auto& p : enumerate_lattice(ctx, family, n))
    out.add_term(ctx.prefactor + p.q_exponent, p.t_exponent, p.weight);
  return out;
}

bool in_coset(const QuadraticFormContext& ctx, const std::vector<std::int64_t>& l, const IntVector& rep) {
  IntVector diff(rep.size());
  for (Eigen::Index i = 0; i < rep.size(); ++i) diff(i) = Integer(l[static_cast<std::size_t>(i)]) - rep(i);
  const IntVector image = ctx.mprime * diff;
  const Integer modulus = 2 * ctx.order;
  for (Eigen::Index i = 0; i < image.size(); ++i)
    if (image(i) % modulus != 0) return false;
  return true;
}

std::vector<TwoVarSeries> p_infty_by_spinc(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                                           const std::vector<SpinCClass>& classes, const Rational& n) {
  std::vector<TwoVarSeries> out(classes.size(), TwoVarSeries(ctx.prefactor + n));
  for (const auto& p : enumerate_lattice(ctx, family, n)) {
    std::size_t hits = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (!in_coset(ctx, p.l, classes[c].representative)) continue;
      out[c].add_term(ctx.prefactor + p.q_exponent, p.t_exponent, p.weight);
      ++hits;
    }
    if (hits != 1 && classes.size() == static_cast<std::size_t>(ctx.order))
      throw ConsistencyError("lattice point lies in " + std::to_string(hits) + " spin^c cosets");
  }
  return out;
}

TwoVarSeries p_infty_spinc(const QuadraticFormContext& ctx, const AdmissibleFamily& family, const SpinCClass& cls,
                           const Rational& n) {
  return p_infty_by_spinc(ctx, family, {cls}, n).front();
}

Rational SpinCWeightData::chi(const IntMatrix& m, const IntVector& x) const {
  const Integer kx = k.dot(x);
  const Integer xx = x.dot(m * x);
  return Rational(-(kx + xx), Integer(2));
}

Rational SpinCWeightData::epsilon(const IntMatrix& m, const IntVector& x) const {
  const auto s = m.rows();
  const Integer msum = m.diagonal().sum();
  const IntVector u = IntVector::Ones(s);
  const Integer xu = x.dot(m * u);
  return -(k_square + 3 * Integer(s) + msum) / 4 + 2 * chi(m, x) + xu;
}

Rational SpinCWeightData::weight(const AdmissibleFamily& family, const PlumbingMatrix& pm, const IntVector& x) const {
  const IntVector l = 2 * (pm.entries * x) + k - pm.entries * pm.ones;
  return product_weight(family, pm.degrees, l);
}

SpinCWeightData spinc_weight_data(const QuadraticFormContext& ctx, const SpinCClass& cls) {
  const auto& pm = ctx.plumbing;
  SpinCWeightData w;
  const IntVector mu = pm.entries * pm.ones;
  w.k = cls.representative + mu;
  w.theta = Rational(w.k.dot(pm.ones) - pm.ones.dot(mu), Integer(2));
  const RatVector r = to_rational(IntVector(w.k - mu));
  w.k_square = r.dot(ctx.minv * r);
  return w;
}

TwoVarSeries direct_from_definition(const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                                    const SpinCClass& cls, const Rational& n) {
  const auto& pm = ctx.plumbing;
  const auto s = ctx.size();
  const SpinCWeightData data = spinc_weight_data(ctx, cls);
  const IntVector mu = pm.entries * pm.ones;
  TwoVarSeries out(ctx.prefactor + n);
  if (n < 0) return out;

  // (x - c)^T (-M) (x - c) <= n with c = -M^{-1}(k - Mu)/2 confines x_i to
  // |x_i - c_i|^2 <= n Q_ii.
  const RatVector c = -(ctx.minv * to_rational(IntVector(data.k - mu))) / 2;
  std::vector<std::vector<Integer>> axis(static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < s; ++i) {
    const Rational radius2 = n * ctx.q(i, i);
    for_each_in_window(c(i), Rational(1), radius2, 0, [&](const Integer& v) { axis[static_cast<std::size_t>(i)].push_back(v); });
    for_each_in_window(c(i), Rational(1), radius2, 1, [&](const Integer& v) { axis[static_cast<std::size_t>(i)].push_back(v); });
    if (axis[static_cast<std::size_t>(i)].empty()) return out;
  }

  const Rational bound = ctx.prefactor + n;
  std::vector<std::size_t> pos(static_cast<std::size_t>(s), 0);
  IntVector x(s);
  while (true) {
    for (Eigen::Index i = 0; i < s; ++i) x(i) = axis[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
    const Rational w = data.weight(family, pm, x);
    if (w != 0) {
      const Rational eps = data.epsilon(pm.entries, x);
      if (eps <= bound) {
        const Rational te = data.theta + x.dot(mu);
        if (!is_integer(te)) throw ConsistencyError("half-integral t-exponent in the x-sum");
        out.add_term(eps, to_int64(boost::multiprecision::numerator(te)), w);
      }
    }
    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++pos[i] < axis[i].size()) break;
      pos[i] = 0;
    }
    if (i == pos.size()) break;
  }
  return out;
}

std::string_view move_name(NeumannMove kind) {
  switch (kind) {
    case NeumannMove::BlowupLeaf: return "blowup_leaf";
    case NeumannMove::BlowupEdge: return "blowup_edge";
    case NeumannMove::Blowdown: return "blowdown";
  }
  return "unknown";
}

NeumannWalk neumann_walk(const PlumbingGraph& start, const AdmissibleFamily& family, const Rational& order,
                         std::uint64_t seed, int moves) {
  constexpr int max_degree = 4;
  auto invariant = [&](const PlumbingGraph& g) {
    const QuadraticFormContext ctx = make_context(plumbing_matrix(g));
    return p_infty_total(ctx, family, order - ctx.prefactor);
  };
  const TwoVarSeries reference = invariant(start);

  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t count) { return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng); };

  NeumannWalk walk;
  walk.final_graph = start;
  PlumbingGraph& g = walk.final_graph;
  for (int step = 0; step < moves; ++step) {
    std::vector<std::size_t> downs, leaf_sites;
    for (std::size_t v = 0; v < g.size(); ++v) {
      const auto w = g.vertices()[v].weight;
      const int deg = g.degree(v);
      if ((w == 1 || w == -1) && (deg == 1 || deg == 2) && g.size() > 2) downs.push_back(v);
      if (deg < max_degree) leaf_sites.push_back(v);
    }
    NeumannStep s;
    const auto roll = pick(4);
    if (!downs.empty() && roll < 2) {
      s.kind = NeumannMove::Blowdown;
      s.site.vertex = g.vertices()[downs[pick(downs.size())]].id;
    } else if (roll == 2 && !leaf_sites.empty()) {
      s.kind = NeumannMove::BlowupLeaf;
      s.site.vertex = g.vertices()[leaf_sites[pick(leaf_sites.size())]].id;
    } else {
      s.kind = NeumannMove::BlowupEdge;
      const auto& e = g.edges()[pick(g.edges().size())];
      s.site.vertex = g.vertices()[e.first].id;
      s.site.other = g.vertices()[e.second].id;
    }
    g = neumann_move(g, s.kind, s.site);
    s.vertices = g.size();
    s.result = compare(reference, invariant(g), order);
    walk.all_equal = walk.all_equal && s.result.equal;
    walk.steps.push_back(std::move(s));
  }
  return walk;
}

}  // namespace plumb
