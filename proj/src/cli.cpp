#include "plumb/cli.hpp"

#include "plumb/errors.hpp"
#include "plumb/lattice.hpp"
#include "plumb/modularity.hpp"
#include "plumb/series.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace plumb {

namespace {

using Json = nlohmann::ordered_json;

struct LoadedInput {
  PlumbingGraph graph;
  std::optional<SeifertData> seifert;
  std::string label;
};

LoadedInput load_input(const JobSpec& job) {
  if (job.input_path.has_value() == job.seifert.has_value())
    throw ParseError("give exactly one of --input FILE and --seifert \"M(b; a1/b1, ...)\"");
  LoadedInput in;
  if (job.seifert) {
    in.seifert = parse_seifert(*job.seifert);
    in.graph = star_graph(*in.seifert);
    in.label = to_string(*in.seifert);
    return in;
  }
  std::ifstream file(*job.input_path);
  if (!file) throw ParseError("cannot read input file '" + *job.input_path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  in.graph = parse_graph(buffer.str());
  in.label = *job.input_path;
  return in;
}

Rational parse_truncation(const std::string& text) {
  Rational n;
  try {
    n = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("--truncate: ") + e.what());
  }
  if (n <= 0) throw ParseError("--truncate must be positive");
  return n;
}

Json series_json(const TwoVarSeries& s) { return Json::parse(to_json(s)); }

Json terms_json(const TLaurent& p) {
  Json t = Json::array();
  for (const auto& [e, c] : p.coefficients()) t.push_back({{"e", e}, {"c", to_fraction_string(c)}});
  return t;
}

ExpansionMode mode_for(const JobSpec& job, const AdmissibleFamily& family, int k) {
  if (job.mode) return parse_mode(*job.mode);
  if (family.kind == AdmissibleFamily::Kind::What) return ExpansionMode::se();
  if (k != 3)
    throw PreconditionError("parametric families have a closed form here only for k = 3 fibers");
  return ExpansionMode::ae(family.w3at1);
}

void check_family_mode(const AdmissibleFamily& family, const ExpansionMode& mode, int k) {
  const bool what_like = mode.kind == ExpansionMode::Kind::Symmetric;
  if (family.kind == AdmissibleFamily::Kind::What && !what_like)
    throw PreconditionError("family 'what' pairs with the symmetric expansion; drop --mode or use a param family");
  if (family.kind == AdmissibleFamily::Kind::Parametric) {
    if (k != 3) throw PreconditionError("parametric families have a closed form here only for k = 3 fibers");
    if (mode.kind == ExpansionMode::Kind::Difference ||
        (mode.kind == ExpansionMode::Kind::Asymmetric && mode.y != family.w3at1) ||
        (mode.kind == ExpansionMode::Kind::Symmetric && family.w3at1 != Rational(1, 2)))
      throw PreconditionError("expansion mode " + mode.descriptor() + " does not match family " + family.descriptor());
  }
}

enum class Shape { None, H, FourStar };

Shape shape_of(const QuadraticFormContext& ctx) {
  try {
    detect_hshape(ctx);
    return Shape::H;
  } catch (const PreconditionError&) {
  }
  try {
    detect_fourstar(ctx);
    return Shape::FourStar;
  } catch (const PreconditionError&) {
  }
  return Shape::None;
}

TwoVarSeries shape_closed(Shape shape, const QuadraticFormContext& ctx, const AdmissibleFamily& family,
                          const Rational& bound) {
  const Rational w3 = family.kind == AdmissibleFamily::Kind::What ? Rational(1, 2) : family.w3at1;
  const Rational w4 = family.kind == AdmissibleFamily::Kind::What ? Rational(0) : family.w4at0;
  if (shape == Shape::H) return hshape_closed(ctx, w3, bound);
  return fourstar_closed(ctx, w3, w4, bound);
}

std::string render(const TwoVarSeries& s, OutputFormat format, const Json& meta) {
  switch (format) {
    case OutputFormat::Csv: return to_csv(s);
    case OutputFormat::Text: {
      std::ostringstream out;
      for (const auto& [key, value] : meta.items()) out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      out << to_text(s);
      return out.str();
    }
    case OutputFormat::Json: {
      Json j = meta;
      j["series"] = series_json(s);
      return j.dump(2) + "\n";
    }
  }
  return {};
}

bool final_scale(const JobSpec& job) {
  if (job.scale == "final") return true;
  if (job.scale == "native") return false;
  throw ParseError("--scale must be native or final");
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  throw ParseError("unknown format '" + text + "' (expected json, text or csv)");
}

CommandResult cmd_compute(const JobSpec& job) {
  const LoadedInput in = load_input(job);
  const AdmissibleFamily family = parse_family(job.family);
  const Rational n = parse_truncation(job.truncate);
  const bool final = final_scale(job);
  const QuadraticFormContext ctx = make_context(plumbing_matrix(in.graph));
  const std::int64_t h = to_int64(ctx.order);

  Json meta;
  meta["command"] = "compute";
  meta["input"] = in.label;
  meta["engine"] = job.engine;
  meta["family"] = family.descriptor();
  meta["scale"] = final ? "final" : "native";
  meta["spinc"] = job.spinc;
  meta["truncate"] = to_display_string(n);
  meta["prefactor"] = to_fraction_string(ctx.prefactor);
  meta["H"] = h;

  TwoVarSeries series;
  if (job.engine == "lattice") {
    if (job.mode) throw PreconditionError("--mode applies to the closed engine only");
    const Rational bound = final ? n / h - ctx.prefactor : n;
    if (job.spinc == "all") {
      series = p_infty_total(ctx, family, bound);
    } else {
      std::size_t index = 0;
      try {
        index = std::stoul(job.spinc);
      } catch (const std::exception&) {
        throw ParseError("--spinc must be 'all' or a class index, got '" + job.spinc + "'");
      }
      const auto classes = enumerate_spinc(ctx.plumbing.entries, ctx.plumbing.degrees);
      if (index >= classes.size())
        throw PreconditionError("spin^c index " + job.spinc + " out of range (" + std::to_string(classes.size()) + " classes)");
      series = p_infty_spinc(ctx, family, classes[index], bound);
    }
    if (final) series = qpower(series, h);
    meta["quadratic_bound"] = to_fraction_string(bound);
  } else if (job.engine == "closed") {
    if (job.spinc != "all") throw PreconditionError("the closed engine computes the total over spin^c classes only");
    if (in.seifert) {
      const F0Spec spec = f0_spec(*in.seifert);
      const ExpansionMode mode = mode_for(job, family, spec.k);
      if (!job.mode) check_family_mode(family, mode, spec.k);
      meta["mode"] = mode.descriptor();
      meta["A"] = spec.a;
      meta["delta"] = to_fraction_string(spec.delta);
      series = final ? closed_final_scale(spec, mode, n) : closed_expansion(spec, mode, n);
    } else {
      const Shape shape = shape_of(ctx);
      if (shape == Shape::None)
        throw PreconditionError("the closed engine needs Seifert input, an H-shaped graph or a 4-valent star");
      if (job.mode) throw PreconditionError("--mode applies to Seifert input only");
      const Rational bound = final ? n / h - ctx.prefactor : n;
      series = shape_closed(shape, ctx, family, bound);
      if (final) series = qpower(series, h);
    }
  } else {
    throw ParseError("unknown engine '" + job.engine + "' (expected lattice or closed)");
  }
  if (job.t_root) {
    series = specialize_t(series, *job.t_root);
    meta["t_root"] = *job.t_root;
  }
  return {exit_code::ok, render(series, job.format, meta)};
}

CommandResult cmd_compare(const JobSpec& job) {
  const LoadedInput in = load_input(job);
  const AdmissibleFamily family = parse_family(job.family);
  const Rational n = parse_truncation(job.truncate);

  TwoVarSeries lattice, closed;
  Rational through;
  std::string convention;
  if (in.seifert) {
    const F0Spec spec = f0_spec(*in.seifert);
    const ExpansionMode mode = mode_for(job, family, spec.k);
    if (!job.mode) check_family_mode(family, mode, spec.k);
    lattice = lattice_final_scale(spec, family, n);
    closed = closed_final_scale(spec, mode, n);
    through = n;
    convention = "P(t^2, q^H) vs q^Delta L_A(" + mode.descriptor() + " f0)";
  } else {
    const QuadraticFormContext ctx = make_context(plumbing_matrix(in.graph));
    const Shape shape = shape_of(ctx);
    if (shape == Shape::None)
      throw PreconditionError("compare needs Seifert input, an H-shaped graph or a 4-valent star");
    lattice = p_infty_total(ctx, family, n);
    closed = shape_closed(shape, ctx, family, n);
    through = ctx.prefactor + n;
    convention = shape == Shape::H ? "P(t^2, q) vs H-shape region sums" : "P(t^2, q) vs 4-star region sums";
  }
  if (job.t_root) {
    lattice = specialize_t(lattice, *job.t_root);
    closed = specialize_t(closed, *job.t_root);
  }
  const ComparisonResult r = compare(lattice, closed, through);

  std::ostringstream out;
  if (job.format == OutputFormat::Json) {
    Json j;
    j["command"] = "compare";
    j["input"] = in.label;
    j["family"] = family.descriptor();
    j["convention"] = convention;
    j["through"] = to_fraction_string(through);
    j["equal"] = r.equal;
    j["lattice_terms"] = lattice.terms().size();
    j["closed_terms"] = closed.terms().size();
    if (r.first_difference) {
      const auto& d = *r.first_difference;
      j["first_difference"] = {{"q", to_fraction_string(d.q)},
                               {"t", d.t},
                               {"lattice", to_fraction_string(d.left)},
                               {"closed", to_fraction_string(d.right)}};
    }
    out << j.dump(2) << '\n';
  } else {
    out << in.label << " [" << family.descriptor() << "] " << convention << '\n';
    if (r.equal)
      out << "EQUAL through q^(" << to_display_string(through) << ")\n";
    else
      out << "MISMATCH at " << to_text(*r.first_difference) << " (lattice vs closed)\n";
  }
  return {r.equal ? exit_code::ok : exit_code::mismatch, out.str()};
}

CommandResult cmd_modularity(const JobSpec& job) {
  const LoadedInput in = load_input(job);
  if (!in.seifert) throw PreconditionError("modularity needs Seifert input");
  if (!job.t_root) throw PreconditionError("modularity needs --t-root 2j");
  const std::int64_t two_j = *job.t_root;
  if (two_j < 2 || two_j % 2 != 0) throw PreconditionError("--t-root must be a positive even integer");
  const F0Spec spec = f0_spec(*in.seifert);
  if (spec.k != 3) throw PreconditionError("k != 3: modularity data needs three exceptional fibers");

  const CoefficientData c = c_function(spec, two_j);
  const CoefficientData d = d_function(spec, two_j);
  const XYSets sets = xy_sets(spec);
  const SupportClasses support = support_classes(spec, two_j / 2);

  if (job.format == OutputFormat::Csv) {
    std::ostringstream out;
    out << "n,C_re,C_im,D_re,D_im\n";
    const auto cn = numeric_coefficients(c.fn), dn = numeric_coefficients(d.fn);
    for (std::int64_t r = 0; r < c.fn.period; ++r)
      out << r << ',' << cn(r).real() << ',' << cn(r).imag() << ',' << dn(r).real() << ',' << dn(r).imag() << '\n';
    return {exit_code::ok, out.str()};
  }

  auto table = [](const PeriodicCoeffFn& fn) {
    Json values = Json::array();
    for (std::int64_t r = 0; r < fn.period; ++r)
      if (!fn(r).is_zero()) values.push_back({{"n", r}, {"t", terms_json(fn(r))}});
    return Json{{"period", fn.period},
                {"modulus", fn.modulus},
                {"parity", fn.parity == PeriodicCoeffFn::Parity::Odd ? "odd" : "even"},
                {"values", values}};
  };
  auto fiber_list = [](const std::vector<FiberTerm>& terms) {
    Json list = Json::array();
    for (const auto& f : terms) list.push_back({{"eps", f.eps}, {"m", f.m}, {"n", f.n}});
    return list;
  };

  Json j;
  j["command"] = "modularity";
  j["input"] = in.label;
  j["two_j"] = two_j;
  j["A"] = spec.a;
  j["abar"] = spec.abar;
  j["H"] = spec.h;
  j["delta"] = to_fraction_string(spec.delta);
  j["C"] = table(c.fn);
  j["C_odd"] = c.fn.is_odd();
  j["C_mean_zero"] = c.fn.mean_zero();
  j["D"] = table(d.fn);
  j["D_even"] = d.fn.is_even();
  j["Y_minus_X"] = fiber_list(sets.y_minus_x);
  j["X_minus_Y"] = fiber_list(sets.x_minus_y);
  j["p1"] = series_json(c.polynomial);
  j["p1_symbolic"] = series_json(polynomial_part(spec, 0, CoefficientKind::C));
  j["p2"] = series_json(d.polynomial);
  Json classes = Json::array();
  for (std::size_t i = 0; i < support.k.size(); ++i)
    classes.push_back({{"k", support.k[i]}, {"S", support.s[i]}, {"S_full", support.s_full[i]}});
  j["support"] = {{"modulus", support.modulus}, {"residue", support.residue}, {"classes", classes}};

  if (job.radial) {
    Rational xi;
    try {
      xi = parse_rational(*job.radial);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("--radial: ") + e.what());
    }
    Json radial;
    radial["xi"] = to_fraction_string(xi);
    try {
      const auto est = radial_limit_estimate(numeric_coefficients(c.fn), spec.a,
                                             to_int64(boost::multiprecision::numerator(xi)),
                                             to_int64(boost::multiprecision::denominator(xi)), 14);
      radial["estimate"] = {est.estimate.real(), est.estimate.imag()};
      radial["error"] = est.error;
    } catch (const std::runtime_error& e) {
      radial["failure"] = e.what();
    }
    j["radial_limit_C"] = radial;
  }

  if (job.format == OutputFormat::Text) {
    std::ostringstream out;
    out << in.label << " at a primitive " << two_j << "-th root of unity\n";
    out << "C: period " << c.fn.period << ", odd " << c.fn.is_odd() << ", mean zero " << c.fn.mean_zero() << '\n';
    out << "D: period " << d.fn.period << ", even " << d.fn.is_even() << '\n';
    out << "p1(q) = " << to_text(polynomial_part(spec, 0, CoefficientKind::C));
    out << "p2(q) = " << to_text(polynomial_part(spec, 0, CoefficientKind::D));
    out << "n^2 = " << support.residue << " mod " << 4 * spec.a << " on the support\n";
    if (j.contains("radial_limit_C")) out << "radial limit of C-series: " << j["radial_limit_C"].dump() << '\n';
    return {exit_code::ok, out.str()};
  }
  return {exit_code::ok, j.dump(2) + "\n"};
}

CommandResult cmd_neumann_check(const JobSpec& job) {
  const LoadedInput in = load_input(job);
  const AdmissibleFamily family = parse_family(job.family);
  const Rational n = parse_truncation(job.truncate);
  if (job.moves < 0) throw ParseError("--moves must be non-negative");
  const NeumannWalk walk = neumann_walk(in.graph, family, n, job.seed, job.moves);

  Json steps = Json::array();
  std::ostringstream text;
  text << in.label << " [" << family.descriptor() << "] through q^(" << to_display_string(n) << ")\n";
  int index = 0;
  for (const auto& step : walk.steps) {
    const std::string site = step.site.other.empty() ? step.site.vertex : step.site.vertex + "-" + step.site.other;
    const std::string name(move_name(step.kind));
    Json s{{"step", ++index}, {"move", name}, {"site", site}, {"vertices", step.vertices}, {"equal", step.result.equal}};
    if (step.result.first_difference) s["first_difference"] = to_text(*step.result.first_difference);
    steps.push_back(s);
    text << "step " << index << ": " << name << " at " << site << " (" << step.vertices << " vertices): "
         << (step.result.equal ? "EQUAL" : "MISMATCH " + to_text(*step.result.first_difference)) << '\n';
  }
  const bool all_equal = walk.all_equal;
  const PlumbingGraph& g = walk.final_graph;
  text << (all_equal ? "PASS" : "FAIL") << '\n';

  if (job.format == OutputFormat::Json) {
    Json j{{"command", "neumann-check"}, {"input", in.label},       {"family", family.descriptor()},
           {"seed", job.seed},           {"through", to_fraction_string(n)}, {"steps", steps},
           {"result", all_equal ? "PASS" : "FAIL"}, {"final_graph", g.to_dsl()}};
    return {all_equal ? exit_code::ok : exit_code::mismatch, j.dump(2) + "\n"};
  }
  return {all_equal ? exit_code::ok : exit_code::mismatch, text.str()};
}

CommandResult run_command(const std::string& command, const JobSpec& job) {
  try {
    if (command == "compute") return cmd_compute(job);
    if (command == "compare") return cmd_compare(job);
    if (command == "modularity") return cmd_modularity(job);
    if (command == "neumann-check") return cmd_neumann_check(job);
    throw ParseError("unknown command '" + command + "'");
  } catch (const ParseError& e) {
    return {exit_code::parse_error, std::string("parse error: ") + e.what() + "\n"};
  } catch (const PreconditionError& e) {
    return {exit_code::precondition, std::string("precondition failed: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {exit_code::parse_error, std::string("invalid argument: ") + e.what() + "\n"};
  }
}

}  // namespace plumb
