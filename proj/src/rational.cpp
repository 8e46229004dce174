#include "wrinkle/rational.hpp"

#include <cmath>

#include "wrinkle/errors.hpp"

namespace wrinkle {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t scale = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("bad decimal '" + text + "'");
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class numerator;
    if (numerator.set_str(digits, 10) != 0) throw ParseError("bad decimal '" + text + "'");
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, scale);
    Rational value(numerator, denominator);
    value.canonicalize();
    return value;
  }
  std::string body = text;
  if (body[0] == '+') body.erase(0, 1);
  Rational value;
  if (value.set_str(body, 10) != 0) throw ParseError("bad rational '" + text + "'");
  if (value.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite double");
  Rational out(value);  // mpq_set_d is exact for finite doubles
  return out;
}

}  // namespace wrinkle
