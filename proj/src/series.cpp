#include "plumb/series.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>

namespace plumb {

namespace {

std::int64_t reduce_mod(std::int64_t e, std::int64_t m) { return ((e % m) + m) % m; }

std::optional<Rational> finer(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

std::string coefficient_text(const Rational& c, bool first, bool unit_allowed) {
  std::string out;
  const bool negative = c < 0;
  if (first)
    out = negative ? "-" : "";
  else
    out = negative ? " - " : " + ";
  const Rational mag = negative ? Rational(-c) : c;
  if (!(unit_allowed && mag == 1)) out += to_display_string(mag);
  return out;
}

}  // namespace

TLaurent TLaurent::monomial(std::int64_t e, const Rational& c, std::optional<std::int64_t> modulus) {
  TLaurent p(modulus);
  p.add_term(e, c);
  return p;
}

Rational TLaurent::coefficient(std::int64_t e) const {
  if (modulus_) e = reduce_mod(e, *modulus_);
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void TLaurent::add_term(std::int64_t e, const Rational& c) {
  if (c == 0) return;
  if (modulus_) e = reduce_mod(e, *modulus_);
  auto [it, inserted] = coeffs_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

TLaurent& TLaurent::operator+=(const TLaurent& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) modulus_ = other.modulus_;
  if (modulus_ != other.modulus_) throw std::invalid_argument("adding Laurent polynomials with different t-moduli");
  for (const auto& [e, c] : other.coeffs_) add_term(e, c);
  return *this;
}

TLaurent& TLaurent::operator-=(const TLaurent& other) { return *this += scale(other, Rational(-1)); }

TLaurent scale(const TLaurent& p, const Rational& c, std::int64_t tshift) {
  TLaurent out(p.modulus());
  if (c == 0) return out;
  for (const auto& [e, v] : p.coefficients()) out.add_term(e + tshift, v * c);
  return out;
}

TLaurent tpower(const TLaurent& p, std::int64_t k) {
  if (p.modulus()) throw std::invalid_argument("t-power of a root-of-unity specialization");
  TLaurent out;
  for (const auto& [e, v] : p.coefficients()) out.add_term(e * k, v);
  return out;
}

TLaurent invert_t(const TLaurent& p) {
  TLaurent out(p.modulus());
  for (const auto& [e, v] : p.coefficients()) out.add_term(-e, v);
  return out;
}

TLaurent specialize_t(const TLaurent& p, std::int64_t two_j) {
  if (two_j < 2 || two_j % 2 != 0) throw std::invalid_argument("root-of-unity order must be a positive even integer");
  if (p.modulus() && *p.modulus() != two_j) {
    if (*p.modulus() % two_j != 0) throw std::invalid_argument("incompatible root-of-unity orders");
  }
  TLaurent out(two_j);
  for (const auto& [e, v] : p.coefficients()) out.add_term(e, v);
  return out;
}

Rational at_t_one(const TLaurent& p) {
  Rational sum = 0;
  for (const auto& [e, v] : p.coefficients()) sum += v;
  return sum;
}

std::complex<double> evaluate(const TLaurent& p, std::complex<double> t) {
  std::complex<double> sum = 0;
  for (const auto& [e, v] : p.coefficients()) sum += v.convert_to<double>() * std::pow(t, static_cast<double>(e));
  return sum;
}

std::string to_text(const TLaurent& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, v] : p.coefficients()) {
    out += coefficient_text(v, first, e != 0);
    if (e != 0) {
      const Rational mag = v < 0 ? Rational(-v) : v;
      if (mag != 1) out += "*";
      out += e == 1 ? "t" : "t^" + std::to_string(e);
    }
    first = false;
  }
  return out;
}

TLaurent TwoVarSeries::coefficient(const Rational& q) const {
  auto it = terms_.find(q);
  return it == terms_.end() ? TLaurent() : it->second;
}

void TwoVarSeries::add_term(const Rational& qe, std::int64_t te, const Rational& c) {
  if (c == 0 || (truncation_ && qe > *truncation_)) return;
  auto& slot = terms_[qe];
  slot.add_term(te, c);
  if (slot.is_zero()) terms_.erase(qe);
}

void TwoVarSeries::add_term(const Rational& qe, const TLaurent& p) {
  if (p.is_zero() || (truncation_ && qe > *truncation_)) return;
  auto& slot = terms_[qe];
  slot += p;
  if (slot.is_zero()) terms_.erase(qe);
}

void TwoVarSeries::set_truncation(std::optional<Rational> n) {
  truncation_ = std::move(n);
  if (!truncation_) return;
  terms_.erase(terms_.upper_bound(*truncation_), terms_.end());
}

TwoVarSeries& TwoVarSeries::operator+=(const TwoVarSeries& other) {
  set_truncation(finer(truncation_, other.truncation_));
  for (const auto& [qe, p] : other.terms_) add_term(qe, p);
  return *this;
}

TwoVarSeries& TwoVarSeries::operator-=(const TwoVarSeries& other) { return *this += scale(other, Rational(-1)); }

TwoVarSeries add(const TwoVarSeries& a, const TwoVarSeries& b) { return a + b; }
TwoVarSeries subtract(const TwoVarSeries& a, const TwoVarSeries& b) { return a - b; }

TwoVarSeries scale(const TwoVarSeries& s, const Rational& c, std::int64_t tshift) {
  TwoVarSeries out(s.truncation());
  for (const auto& [qe, p] : s.terms()) out.add_term(qe, scale(p, c, tshift));
  return out;
}

TwoVarSeries qshift(const TwoVarSeries& s, const Rational& delta) {
  std::optional<Rational> n = s.truncation();
  if (n) *n += delta;
  TwoVarSeries out(n);
  for (const auto& [qe, p] : s.terms()) out.add_term(qe + delta, p);
  return out;
}

TwoVarSeries qpower(const TwoVarSeries& s, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("q-power must be a positive integer");
  std::optional<Rational> n = s.truncation();
  if (n) *n *= k;
  TwoVarSeries out(n);
  for (const auto& [qe, p] : s.terms()) out.add_term(qe * k, p);
  return out;
}

TwoVarSeries tpower(const TwoVarSeries& s, std::int64_t k) {
  TwoVarSeries out(s.truncation());
  for (const auto& [qe, p] : s.terms()) out.add_term(qe, tpower(p, k));
  return out;
}

TwoVarSeries specialize_t(const TwoVarSeries& s, std::int64_t two_j) {
  TwoVarSeries out(s.truncation());
  for (const auto& [qe, p] : s.terms()) out.add_term(qe, specialize_t(p, two_j));
  return out;
}

TwoVarSeries at_t_one(const TwoVarSeries& s) {
  TwoVarSeries out(s.truncation());
  for (const auto& [qe, p] : s.terms()) out.add_term(qe, 0, at_t_one(p));
  return out;
}

TwoVarSeries truncate(const TwoVarSeries& s, const Rational& n) {
  TwoVarSeries out = s;
  out.set_truncation(finer(s.truncation(), n));
  return out;
}

Rational laplace_exponent(std::int64_t n, std::int64_t a) {
  return Rational(Integer(n) * n, Integer(4) * a);
}

TwoVarSeries laplace_transform(const std::vector<LaplaceTerm>& terms, std::int64_t a, const Rational& n) {
  if (a < 1) throw std::invalid_argument("Laplace transform needs A >= 1");
  TwoVarSeries out(n);
  for (const auto& term : terms) out.add_term(laplace_exponent(term.n, a), term.m, term.c);
  return out;
}

ComparisonResult compare(const TwoVarSeries& a, const TwoVarSeries& b, const Rational& n) {
  if ((a.truncation() && *a.truncation() < n) || (b.truncation() && *b.truncation() < n))
    throw std::invalid_argument("insufficient truncation: a series is known only below order " + to_display_string(n));
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  auto first_diff = [](const Rational& q, const TLaurent& x, const TLaurent& y) -> std::optional<SeriesDifference> {
    auto px = x.coefficients().begin(), py = y.coefficients().begin();
    while (px != x.coefficients().end() || py != y.coefficients().end()) {
      if (py == y.coefficients().end() || (px != x.coefficients().end() && px->first < py->first))
        return SeriesDifference{q, px->first, px->second, 0};
      if (px == x.coefficients().end() || py->first < px->first)
        return SeriesDifference{q, py->first, 0, py->second};
      if (px->second != py->second) return SeriesDifference{q, px->first, px->second, py->second};
      ++px;
      ++py;
    }
    return std::nullopt;
  };
  while (true) {
    const bool end_a = ia == a.terms().end() || ia->first > n;
    const bool end_b = ib == b.terms().end() || ib->first > n;
    if (end_a && end_b) return {true, std::nullopt};
    std::optional<SeriesDifference> d;
    if (end_b || (!end_a && ia->first < ib->first)) {
      d = first_diff(ia->first, ia->second, TLaurent());
      ++ia;
    } else if (end_a || ib->first < ia->first) {
      d = first_diff(ib->first, TLaurent(), ib->second);
      ++ib;
    } else {
      d = first_diff(ia->first, ia->second, ib->second);
      ++ia;
      ++ib;
    }
    if (d) return {false, d};
  }
}

std::string to_text(const TwoVarSeries& s) {
  std::ostringstream out;
  if (s.is_zero()) out << "0";
  bool first = true;
  for (const auto& [qe, p] : s.terms()) {
    if (!first) out << "\n+ ";
    out << "q^(" << to_display_string(qe) << ") * (" << to_text(p) << ")";
    first = false;
  }
  if (s.truncation())
    out << "\n  [exact through q^(" << to_display_string(*s.truncation()) << ")]\n";
  else
    out << "\n  [exact]\n";
  return out.str();
}

std::string to_json(const TwoVarSeries& s, int indent) {
  nlohmann::ordered_json j;
  j["truncation"] = s.truncation() ? nlohmann::ordered_json(to_fraction_string(*s.truncation())) : nullptr;
  std::optional<std::int64_t> modulus;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [qe, p] : s.terms()) {
    if (p.modulus()) modulus = p.modulus();
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& [e, c] : p.coefficients()) t.push_back({{"e", e}, {"c", to_fraction_string(c)}});
    terms.push_back({{"q", to_fraction_string(qe)}, {"t", t}});
  }
  if (modulus) j["t_modulus"] = *modulus;
  j["terms"] = terms;
  return j.dump(indent);
}

TwoVarSeries series_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::optional<Rational> n;
  if (!j.at("truncation").is_null()) n = parse_rational(j.at("truncation").get<std::string>());
  std::optional<std::int64_t> modulus;
  if (j.contains("t_modulus")) modulus = j.at("t_modulus").get<std::int64_t>();
  TwoVarSeries s(n);
  for (const auto& term : j.at("terms")) {
    const Rational qe = parse_rational(term.at("q").get<std::string>());
    TLaurent p(modulus);
    for (const auto& mono : term.at("t"))
      p.add_term(mono.at("e").get<std::int64_t>(), parse_rational(mono.at("c").get<std::string>()));
    s.add_term(qe, p);
  }
  return s;
}

std::string to_csv(const TwoVarSeries& s) {
  std::ostringstream out;
  out << "q,t,c\n";
  for (const auto& [qe, p] : s.terms())
    for (const auto& [e, c] : p.coefficients())
      out << to_fraction_string(qe) << ',' << e << ',' << to_fraction_string(c) << '\n';
  return out.str();
}

std::string to_text(const SeriesDifference& d) {
  return "q^(" + to_display_string(d.q) + ") t^" + std::to_string(d.t) + ": " + to_display_string(d.left) +
         " vs " + to_display_string(d.right);
}

}  // namespace plumb
