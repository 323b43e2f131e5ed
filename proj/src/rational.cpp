#include "crossperc/rational.hpp"

#include <cctype>
#include <cmath>

#include "crossperc/errors.hpp"

namespace crossperc {

namespace {

Integer pow10(unsigned e) {
  Integer p = 1;
  for (unsigned i = 0; i < e; ++i)
    p *= 10;
  return p;
}

Rational parse_decimal(const std::string &text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-'))
    negative = text[i++] == '-';
  Integer digits = 0;
  int scale = 0;
  bool any = false, dot = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      scale -= dot ? 1 : 0;
      any = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any)
    throw ParameterError("not a number: '" + text + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E')
      throw ParameterError("not a number: '" + text + "'");
    try {
      std::size_t used = 0;
      scale += std::stoi(text.substr(i + 1), &used);
      if (i + 1 + used != text.size())
        throw ParameterError("not a number: '" + text + "'");
    } catch (const std::logic_error &) {
      throw ParameterError("not a number: '" + text + "'");
    }
  }
  Rational value = scale >= 0 ? Rational(digits * pow10(static_cast<unsigned>(scale)))
                              : Rational(digits, pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(const std::string &text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos)
    return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0)
    throw ParameterError("zero denominator in '" + text + "'");
  return num / den;
}

Rational to_rational(double value) {
  if (!std::isfinite(value))
    throw ParameterError("cannot convert a non-finite double to a rational");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{Integer(scaled)};
  if (exponent >= 0)
    r *= Rational(Integer(1) << exponent);
  else
    r /= Rational(Integer(1) << -exponent);
  return r;
}

} // namespace crossperc
