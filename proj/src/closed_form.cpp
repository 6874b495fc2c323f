#include "plumb/closed_form.hpp"

#include "plumb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace plumb {

namespace {

std::vector<std::vector<int>> sign_patterns(std::size_t k) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> eps(k);
    for (std::size_t i = 0; i < k; ++i) eps[i] = (mask >> i) & 1 ? 1 : -1;
    out.push_back(eps);
  }
  return out;
}

Rational quadratic_value(const RatMatrix& q, const std::vector<std::int64_t>& l) {
  Rational sum = 0;
  const auto s = static_cast<Eigen::Index>(l.size());
  for (Eigen::Index i = 0; i < s; ++i) {
    if (l[static_cast<std::size_t>(i)] == 0) continue;
    Rational row = 0;
    for (Eigen::Index j = 0; j < s; ++j)
      if (l[static_cast<std::size_t>(j)] != 0) row += q(i, j) * l[static_cast<std::size_t>(j)];
    sum += row * l[static_cast<std::size_t>(i)];
  }
  return sum;
}

// Points with leaves at +-1, joints at 0, node values of the right parity, and
// l^T Q l / 4 <= bound, found by scanning the box |l_i|^2 <= 4 bound (-M_ii).
void scan_box(const QuadraticFormContext& ctx, const Rational& bound,
              const std::function<void(const std::vector<std::int64_t>&, const Rational&)>& visit) {
  if (bound < 0) return;
  const auto& pm = ctx.plumbing;
  const auto s = pm.size();
  std::vector<std::vector<std::int64_t>> axis(static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < s; ++i) {
    auto& values = axis[static_cast<std::size_t>(i)];
    switch (pm.roles[static_cast<std::size_t>(i)]) {
      case VertexRole::Leaf: values = {-1, 1}; break;
      case VertexRole::Joint: values = {0}; break;
      default: {
        const std::int64_t r = to_int64(isqrt(floor(4 * bound * Rational(-pm.entries(i, i)))));
        const std::int64_t parity = to_int64(pm.degrees(i)) % 2;
        for (std::int64_t v = -r; v <= r; ++v)
          if (((v % 2) + 2) % 2 == parity) values.push_back(v);
      }
    }
  }
  std::vector<std::size_t> pos(static_cast<std::size_t>(s), 0);
  std::vector<std::int64_t> l(static_cast<std::size_t>(s));
  const Rational limit = 4 * bound;
  while (true) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (axis[i].empty()) return;
      l[i] = axis[i][pos[i]];
    }
    const Rational quad = quadratic_value(ctx.q, l);
    if (quad <= limit) visit(l, quad / 4);
    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++pos[i] < axis[i].size()) break;
      pos[i] = 0;
    }
    if (i == pos.size()) return;
  }
}

std::int64_t leaf_sign_product(const std::vector<std::int64_t>& l, const std::vector<Eigen::Index>& leaves) {
  std::int64_t p = 1;
  for (auto i : leaves) p *= l[static_cast<std::size_t>(i)];
  return p;
}

std::int64_t total(const std::vector<std::int64_t>& l) {
  std::int64_t t = 0;
  for (auto v : l) t += v;
  return t;
}

}  // namespace

Rational ExpansionMode::inner_weight() const {
  switch (kind) {
    case Kind::Symmetric: return Rational(1, 2);
    case Kind::Asymmetric: return 1 - y;
    case Kind::Difference: return 1;
  }
  return 0;
}

Rational ExpansionMode::outer_weight() const {
  switch (kind) {
    case Kind::Symmetric: return Rational(1, 2);
    case Kind::Asymmetric: return y;
    case Kind::Difference: return -1;
  }
  return 0;
}

std::string ExpansionMode::descriptor() const {
  switch (kind) {
    case Kind::Symmetric: return "se";
    case Kind::Asymmetric: return "ae:" + to_display_string(y);
    case Kind::Difference: return "sd";
  }
  return "?";
}

ExpansionMode parse_mode(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "se") return ExpansionMode::se();
  if (s == "sd") return ExpansionMode::sd();
  if (s.rfind("ae:", 0) == 0) {
    try {
      return ExpansionMode::ae(parse_rational(s.substr(3)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("expansion mode: ") + e.what());
    }
  }
  throw ParseError("unknown expansion mode '" + s + "' (expected se, sd or ae:p/q)");
}

F0Spec f0_spec(const SeifertData& sd) {
  F0Spec spec;
  spec.seifert = normalize(sd);
  const SpliceConstants sc = splice_constants(spec.seifert);
  spec.k = static_cast<int>(sc.fibers.orders.size());
  if (spec.k < 3)
    throw PreconditionError("closed forms need at least three exceptional fibers, got " + std::to_string(spec.k));
  spec.a = to_int64(sc.fibers.a_product);
  for (const auto& v : sc.fibers.abar) spec.abar.push_back(to_int64(v));
  spec.h = to_int64(sc.order);
  spec.ctx = make_context(sc.matrix);
  spec.node = sc.matrix.position_of("c");
  for (std::size_t i = 0; i < spec.seifert.pairs.size(); ++i) {
    const auto& p = spec.seifert.pairs[i];
    if (p.a == 1) continue;
    const auto length = continued_fraction(p.a, p.b).terms.size();
    spec.leaves.push_back(sc.matrix.position_of("f" + std::to_string(i + 1) + "." + std::to_string(length)));
  }
  spec.delta = delta_offset(spec.ctx, spec.a, spec.abar, spec.node, spec.leaves);
  return spec;
}

Rational inner_coefficient(int k, std::int64_t m) {
  if (m <= 0) return 0;
  const Integer c = odd_composition_count(m, k - 2);
  return k % 2 == 0 ? Rational(c) : Rational(-c);
}

Rational outer_coefficient(int k, std::int64_t m) {
  if (m >= 0) return 0;
  return Rational(odd_composition_count(-m, k - 2));
}

std::vector<ExpansionTerm> f0_terms(const F0Spec& spec, const ExpansionMode& mode, const Rational& bound) {
  std::vector<ExpansionTerm> out;
  if (bound < 0) return out;
  const std::int64_t nmax = to_int64(isqrt(floor(4 * Rational(spec.a) * bound)));
  const Rational inner_w = mode.inner_weight();
  const Rational outer_w = mode.outer_weight();
  for (const auto& eps : sign_patterns(static_cast<std::size_t>(spec.k))) {
    std::int64_t shift = 0, sign = 1, esum = 0;
    for (int i = 0; i < spec.k; ++i) {
      shift += eps[static_cast<std::size_t>(i)] * spec.abar[static_cast<std::size_t>(i)];
      sign *= eps[static_cast<std::size_t>(i)];
      esum += eps[static_cast<std::size_t>(i)];
    }
    const std::int64_t mlo = to_int64(ceil(Rational(-nmax - shift, spec.a)));
    const std::int64_t mhi = to_int64(floor(Rational(nmax - shift, spec.a)));
    for (std::int64_t m = mlo; m <= mhi; ++m) {
      const Rational region = m > 0 ? inner_w * inner_coefficient(spec.k, m) : outer_w * outer_coefficient(spec.k, m);
      if (region == 0) continue;
      ExpansionTerm term;
      term.eps = eps;
      term.m = m;
      term.n = shift + m * spec.a;
      term.t = -esum - m;
      term.c = region * sign;
      out.push_back(std::move(term));
    }
  }
  std::sort(out.begin(), out.end(), [](const ExpansionTerm& x, const ExpansionTerm& y) {
    return std::tie(x.m, x.eps) < std::tie(y.m, y.eps);
  });
  return out;
}

Rational delta_offset(const QuadraticFormContext& ctx, std::int64_t a, const std::vector<std::int64_t>& abar,
                      Eigen::Index node, const std::vector<Eigen::Index>& leaves) {
  const auto k = static_cast<std::int64_t>(leaves.size());
  const Rational h(ctx.order);
  std::optional<Rational> delta;
  std::vector<std::int64_t> l(static_cast<std::size_t>(ctx.size()), 0);
  for (std::int64_t l0 = -(k + 5); l0 <= k + 5; ++l0) {
    if (((l0 - k) % 2 + 2) % 2 != 0) continue;
    for (const auto& eps : sign_patterns(leaves.size())) {
      l[static_cast<std::size_t>(node)] = l0;
      std::int64_t n = l0 * a;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        l[static_cast<std::size_t>(leaves[i])] = eps[i];
        n += eps[i] * abar[i];
      }
      const Rational value = h * (ctx.prefactor + quadratic_value(ctx.q, l) / 4) - laplace_exponent(n, a);
      if (!delta)
        delta = value;
      else if (*delta != value)
        throw ConsistencyError("offset not constant: " + to_display_string(*delta) + " vs " +
                               to_display_string(value));
    }
  }
  return *delta;
}

TwoVarSeries closed_expansion(const F0Spec& spec, const ExpansionMode& mode, const Rational& bound) {
  std::vector<LaplaceTerm> terms;
  for (const auto& t : f0_terms(spec, mode, bound)) terms.push_back({t.n, t.t, t.c});
  return qshift(laplace_transform(terms, spec.a, bound), spec.delta);
}

TwoVarSeries zhathat_closed(const F0Spec& spec, const Rational& bound) {
  return closed_expansion(spec, ExpansionMode::se(), bound);
}

TwoVarSeries p_infty_closed_3fiber(const F0Spec& spec, const Rational& w3at1, const Rational& bound) {
  if (spec.k != 3)
    throw PreconditionError("the asymmetric closed form needs k = 3 fibers, got k = " + std::to_string(spec.k));
  return closed_expansion(spec, ExpansionMode::ae(w3at1), bound);
}

TwoVarSeries lattice_final_scale(const F0Spec& spec, const AdmissibleFamily& family, const Rational& order) {
  const Rational bound = order / spec.h - spec.ctx.prefactor;
  return qpower(p_infty_total(spec.ctx, family, bound), spec.h);
}

TwoVarSeries closed_final_scale(const F0Spec& spec, const ExpansionMode& mode, const Rational& order) {
  return closed_expansion(spec, mode, order - spec.delta);
}

HShape detect_hshape(const QuadraticFormContext& ctx) {
  const auto& pm = ctx.plumbing;
  const bool ok = pm.size() == 6 && pm.degrees(0) == 3 && pm.degrees(1) == 3 && pm.entries(0, 1) == 1 &&
                  std::count(pm.roles.begin(), pm.roles.end(), VertexRole::Leaf) == 4;
  if (!ok) throw PreconditionError("shape mismatch: expected two adjacent degree-3 nodes and four leaves");
  return {0, 1, {2, 3, 4, 5}};
}

FourStar detect_fourstar(const QuadraticFormContext& ctx) {
  const auto& pm = ctx.plumbing;
  const bool ok = pm.size() == 5 && pm.degrees(0) == 4 &&
                  std::count(pm.roles.begin(), pm.roles.end(), VertexRole::Leaf) == 4;
  if (!ok) throw PreconditionError("shape mismatch: expected one degree-4 node and four leaves");
  return {0, {1, 2, 3, 4}};
}

TwoVarSeries hshape_closed(const QuadraticFormContext& ctx, const Rational& w3at1, const Rational& bound) {
  const HShape shape = detect_hshape(ctx);
  const Rational& w = w3at1;
  const Rational same_pos = w * w, same_neg = (w - 1) * (w - 1), mixed = w * (w - 1);
  TwoVarSeries out(ctx.prefactor + bound);
  scan_box(ctx, bound, [&](const std::vector<std::int64_t>& l, const Rational& quad) {
    const auto m = l[static_cast<std::size_t>(shape.node_a)];
    const auto n = l[static_cast<std::size_t>(shape.node_b)];
    if (m < 0) return;  // the other half is the image under l -> -l
    const Rational sign(leaf_sign_product(l, shape.leaves));
    const auto t = total(l);
    const Rational qe = ctx.prefactor + quad;
    if (n > 0) {
      out.add_term(qe, t, sign * same_pos);
      out.add_term(qe, -t, sign * same_neg);
    } else {
      out.add_term(qe, t, sign * mixed);
      out.add_term(qe, -t, sign * mixed);
    }
  });
  return out;
}

TwoVarSeries fourstar_closed(const QuadraticFormContext& ctx, const Rational& w3at1, const Rational& w4at0,
                             const Rational& bound) {
  const FourStar shape = detect_fourstar(ctx);
  TwoVarSeries out(ctx.prefactor + bound);
  scan_box(ctx, bound, [&](const std::vector<std::int64_t>& l, const Rational& quad) {
    const auto v = l[static_cast<std::size_t>(shape.node)];
    const Rational sign(leaf_sign_product(l, shape.leaves));
    const auto t = total(l);
    const Rational qe = ctx.prefactor + quad;
    const Rational half_abs(v < 0 ? -v : v, 2);
    if (v < 0) out.add_term(qe, t, (1 - w3at1) * sign * half_abs);
    if (v > 0) out.add_term(qe, t, w3at1 * sign * half_abs);
    out.add_term(qe, t, w4at0 * sign);
  });
  return out;
}

HShapeTOne hshape_t_one(const QuadraticFormContext& ctx, const Rational& bound) {
  const HShape shape = detect_hshape(ctx);
  HShapeTOne out{TwoVarSeries(ctx.prefactor + bound), TwoVarSeries(ctx.prefactor + bound)};
  scan_box(ctx, bound, [&](const std::vector<std::int64_t>& l, const Rational& quad) {
    const auto m = l[static_cast<std::size_t>(shape.node_a)];
    const auto n = l[static_cast<std::size_t>(shape.node_b)];
    if (m < 0) return;
    auto& target = n > 0 ? out.same_sign : out.mixed_sign;
    target.add_term(ctx.prefactor + quad, 0, Rational(leaf_sign_product(l, shape.leaves)));
  });
  return out;
}

Rational hshape_y1(const Rational& w3at1) { return 2 * w3at1 * w3at1 - 2 * w3at1 + 1; }

TwoVarSeries fourstar_theta(const QuadraticFormContext& ctx, const Rational& bound) {
  const FourStar shape = detect_fourstar(ctx);
  TwoVarSeries out(ctx.prefactor + bound);
  scan_box(ctx, bound, [&](const std::vector<std::int64_t>& l, const Rational& quad) {
    out.add_term(ctx.prefactor + quad, 0, Rational(leaf_sign_product(l, shape.leaves)));
  });
  return out;
}

}  // namespace plumb
