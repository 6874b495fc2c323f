#include "plumb/seifert.hpp"

#include "plumb/errors.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace plumb {

namespace {

std::int64_t floor_div(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

void check_pair(const SeifertPair& p) {
  if (p.a < 1) throw PreconditionError("Seifert invariant a_i must be positive, got " + std::to_string(p.a));
  if (std::gcd(p.a, p.b) != 1)
    throw PreconditionError("Seifert pair (" + std::to_string(p.a) + "," + std::to_string(p.b) +
                            ") is not coprime");
}

std::int64_t parse_int64(std::string_view s, std::string_view context) {
  std::string text(s);
  std::size_t used = 0;
  try {
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected integer in " + std::string(context) + ", got '" + text + "'");
}

FiberConstants constants_for(const std::vector<std::int64_t>& orders) {
  FiberConstants fc;
  fc.orders = orders;
  fc.a_product = 1;
  for (auto a : orders) fc.a_product *= a;
  const auto k = static_cast<Eigen::Index>(orders.size());
  fc.abarbar = IntMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    fc.abar.push_back(fc.a_product / orders[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < k; ++j)
      if (i != j)
        fc.abarbar(i, j) = fc.a_product / (Integer(orders[static_cast<std::size_t>(i)]) *
                                           orders[static_cast<std::size_t>(j)]);
  }
  return fc;
}

}  // namespace

SeifertData normalize(const SeifertData& sd) {
  SeifertData out{sd.b, {}};
  for (const auto& p : sd.pairs) {
    check_pair(p);
    const std::int64_t q = floor_div(p.b, p.a);
    out.b -= q;
    out.pairs.push_back({p.a, p.b - q * p.a});
  }
  return out;
}

SeifertData parse_seifert(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.size() < 4 || s[0] != 'M' || s[1] != '(' || s.back() != ')')
    throw ParseError("Seifert shorthand must look like M(b; a1/b1, ...), got '" + std::string(text) + "'");
  const std::string body = s.substr(2, s.size() - 3);
  const auto semi = body.find(';');
  if (semi == std::string::npos) throw ParseError("Seifert shorthand is missing ';' after b");
  SeifertData sd;
  sd.b = parse_int64(body.substr(0, semi), "Seifert b");
  std::string rest = body.substr(semi + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::string item;
    if (rest[pos] == '(') {
      const auto close = rest.find(')', pos);
      if (close == std::string::npos) throw ParseError("unbalanced '(' in Seifert pair list");
      item = rest.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      const auto comma = item.find(',');
      if (comma == std::string::npos) throw ParseError("Seifert pair needs two entries: (" + item + ")");
      item[comma] = '/';
    } else {
      const auto comma = rest.find(',', pos);
      item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma == std::string::npos ? rest.size() : comma;
    }
    const auto slash = item.find('/');
    if (slash == std::string::npos) throw ParseError("Seifert pair must be a/b, got '" + item + "'");
    sd.pairs.push_back({parse_int64(item.substr(0, slash), "Seifert pair"),
                        parse_int64(item.substr(slash + 1), "Seifert pair")});
    if (pos < rest.size()) {
      if (rest[pos] != ',') throw ParseError("expected ',' between Seifert pairs");
      ++pos;
    }
  }
  if (sd.pairs.empty()) throw ParseError("Seifert shorthand lists no pairs");
  return sd;
}

Rational ContinuedFraction::evaluate() const {
  if (terms.empty()) throw std::invalid_argument("empty continued fraction");
  Rational value(terms.back());
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) value = Rational(*it) - 1 / value;
  return value;
}

ContinuedFraction continued_fraction(std::int64_t a, std::int64_t b) {
  check_pair({a, b});
  b -= floor_div(b, a) * a;
  if (b == 0) throw PreconditionError("b = 0 mod a has no continued fraction with terms >= 2");
  ContinuedFraction cf;
  // a/b = c - 1/(b/(cb - a)) with c = ceil(a/b)
  while (b != 0) {
    const std::int64_t c = -floor_div(-a, b);
    cf.terms.push_back(c);
    const std::int64_t next = c * b - a;
    a = b;
    b = next;
  }
  return cf;
}

PlumbingGraph star_graph(const SeifertData& input) {
  const SeifertData sd = normalize(input);
  std::vector<Vertex> vertices{{"c", -sd.b}};
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < sd.pairs.size(); ++i) {
    if (sd.pairs[i].a == 1) continue;
    const auto cf = continued_fraction(sd.pairs[i].a, sd.pairs[i].b);
    std::size_t previous = 0;
    for (std::size_t j = 0; j < cf.terms.size(); ++j) {
      vertices.push_back({"f" + std::to_string(i + 1) + "." + std::to_string(j + 1), -cf.terms[j]});
      edges.emplace_back(previous, vertices.size() - 1);
      previous = vertices.size() - 1;
    }
  }
  return PlumbingGraph(std::move(vertices), std::move(edges));
}

FiberConstants fiber_constants(const SeifertData& sd) {
  std::vector<std::int64_t> orders;
  for (const auto& p : sd.pairs) {
    check_pair(p);
    orders.push_back(p.a);
  }
  return constants_for(orders);
}

FiberConstants leg_fiber_constants(const SeifertData& sd) {
  std::vector<std::int64_t> orders;
  for (const auto& p : normalize(sd).pairs)
    if (p.a > 1) orders.push_back(p.a);
  return constants_for(orders);
}

SpliceConstants splice_constants(const SeifertData& sd) {
  SpliceConstants sc;
  sc.fibers = leg_fiber_constants(sd);
  sc.graph = star_graph(sd);
  sc.matrix = plumbing_matrix(sc.graph);
  if (!is_negative_definite(sc.matrix.entries))
    throw PreconditionError("not negative definite: " + to_string(sd));
  const auto adj = det_and_adjugate(sc.matrix.entries);
  sc.det = adj.det;
  sc.order = adj.order;
  sc.mprime = adj.adjugate;
  return sc;
}

std::string to_string(const SeifertData& sd) {
  std::ostringstream out;
  out << "M(" << sd.b << ';';
  for (std::size_t i = 0; i < sd.pairs.size(); ++i)
    out << (i ? ", " : " ") << sd.pairs[i].a << '/' << sd.pairs[i].b;
  out << ')';
  return out.str();
}

}  // namespace plumb
