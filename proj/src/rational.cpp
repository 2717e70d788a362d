#include "bratteli/rational.hpp"

#include "bratteli/error.hpp"

#include <cctype>

namespace bratteli {

std::string to_fraction_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) {
    throw Error(ErrorCode::InvalidInput, "malformed integer '" + s + "'");
  }
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw Error(ErrorCode::InvalidInput, "malformed integer '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw Error(ErrorCode::InvalidInput, "malformed rational '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) {
    throw Error(ErrorCode::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

std::string format_common_denominator(std::span<const Rational> coords) {
  const Integer d = lcm_of_denominators(coords);
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    Integer num = coords[i].get_num() * (d / coords[i].get_den());
    out += num.get_str() + "/" + d.get_str();
  }
  return out + ")";
}

std::string format_reduced(std::span<const Rational> coords) {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += to_fraction_string(coords[i]);
  }
  return out + ")";
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational power(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace bratteli
