#include "plumb/families.hpp"

#include "plumb/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace plumb {

namespace {

Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  Integer result = 1;
  for (std::int64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

void require_degree(int d) {
  if (d < 1) throw PreconditionError("admissible families are defined for degree >= 1, got " + std::to_string(d));
}

}  // namespace

Integer odd_composition_count(std::int64_t n, int r) {
  if (r < 1 || n < r || (n - r) % 2 != 0) return 0;
  // n = sum (2 j_i + 1): distribute (n - r)/2 among r slots
  return binomial((n - r) / 2 + r - 1, r - 1);
}

Rational what(int d, std::int64_t n) {
  require_degree(d);
  if (d == 1) return (n == 1 || n == -1) ? Rational(-n) : Rational(0);
  if (d == 2) return n == 0 ? Rational(1) : Rational(0);
  const Integer count = odd_composition_count(std::abs(n), d - 2);
  if (count == 0) return 0;
  const Rational half(count, Integer(2));
  return (n < 0 && d % 2 == 1) ? Rational(-half) : half;
}

Rational parametric_w(const Rational& w3at1, const Rational& w4at0, int d, std::int64_t n) {
  require_degree(d);
  if (d <= 2) return what(d, n);
  if (d == 3) {
    if (n % 2 == 0) return 0;
    return n > 0 ? w3at1 : Rational(w3at1 - 1);
  }
  if (d == 4) {
    if (n % 2 != 0) return 0;
    const Rational half_n(n, 2);
    return n <= 0 ? Rational(w4at0 + (w3at1 - 1) * half_n) : Rational(w4at0 + w3at1 * half_n);
  }
  throw PreconditionError("unsupported degree " + std::to_string(d) +
                          " for the parametric family (degrees <= 4 only)");
}

Rational AdmissibleFamily::operator()(int d, std::int64_t n) const {
  return kind == Kind::What ? what(d, n) : parametric_w(w3at1, w4at0, d, n);
}

std::string AdmissibleFamily::descriptor() const {
  if (kind == Kind::What) return "what";
  return "param:w3=" + to_display_string(w3at1) + ",w4=" + to_display_string(w4at0);
}

AdmissibleFamily parse_family(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "what") return AdmissibleFamily::what_family();
  const std::string prefix = "param:";
  if (s.rfind(prefix, 0) != 0) throw ParseError("unknown family '" + s + "' (expected what or param:w3=..,w4=..)");
  AdmissibleFamily f = AdmissibleFamily::parametric(Rational(1, 2), Rational(0));
  std::string rest = s.substr(prefix.size());
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("family parameter needs '=': '" + item + "'");
    const std::string key = item.substr(0, eq);
    Rational value;
    try {
      value = parse_rational(item.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("family parameter ") + key + ": " + e.what());
    }
    if (key == "w3")
      f.w3at1 = value;
    else if (key == "w4")
      f.w4at0 = value;
    else
      throw ParseError("unknown family parameter '" + key + "'");
    pos = comma + 1;
  }
  return f;
}

Rational product_weight(const AdmissibleFamily& family, const IntVector& degrees, const IntVector& l) {
  if (degrees.size() != l.size()) throw std::invalid_argument("degree and lattice vectors differ in length");
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (degrees(i) == 2 && l(i) != 0) return 0;
    if (degrees(i) == 1 && l(i) != 1 && l(i) != -1) return 0;
  }
  Rational product = 1;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    product *= family(static_cast<int>(degrees(i)), to_int64(l(i)));
    if (product == 0) return 0;
  }
  return product;
}

bool SupportRange::contains(std::int64_t n) const {
  if (((n % 2) + 2) % 2 != parity) return false;
  const std::int64_t a = std::abs(n);
  if (a < min_abs || (max_abs && a > *max_abs)) return false;
  if (n > 0) return positive;
  if (n < 0) return negative;
  return zero;
}

SupportRange support_range(const AdmissibleFamily& family, int d) {
  require_degree(d);
  SupportRange r;
  r.parity = d % 2;
  if (d == 1) {
    r.min_abs = 1;
    r.max_abs = 1;
    return r;
  }
  if (d == 2) {
    r.max_abs = 0;
    return r;
  }
  if (family.kind == AdmissibleFamily::Kind::What) {
    r.min_abs = d - 2;
    r.zero = false;
    return r;
  }
  if (d == 3) {
    r.min_abs = 1;
    r.positive = family.w3at1 != 0;
    r.negative = family.w3at1 != 1;
    return r;
  }
  if (d == 4) return r;
  throw PreconditionError("unsupported degree " + std::to_string(d) +
                          " for the parametric family (degrees <= 4 only)");
}

}  // namespace plumb
