#include "plumb/scalar.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace plumb {

Integer floor(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  Integer q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

Integer ceil(const Rational& x) { return -floor(Rational(-x)); }

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

Rational parse_rational(std::string_view text) {
  std::string cleaned;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
  if (cleaned.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto as_int = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return Integer(s);
  };
  const auto slash = cleaned.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(cleaned)) throw std::invalid_argument("malformed rational '" + cleaned + "'");
    return Rational(as_int(cleaned));
  }
  const std::string num = cleaned.substr(0, slash);
  const std::string den = cleaned.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("malformed rational '" + cleaned + "'");
  const Integer d = as_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + cleaned + "'");
  return Rational(as_int(num), d);
}

std::string to_fraction_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

std::string to_display_string(const Rational& x) {
  if (is_integer(x)) return boost::multiprecision::numerator(x).str();
  return to_fraction_string(x);
}

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

IntVector to_int_vector(const std::vector<std::int64_t>& values) {
  IntVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

}  // namespace plumb
