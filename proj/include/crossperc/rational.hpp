#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace crossperc {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "0.19", "-3", "1/5" or "2.5e-2" into an exact rational.
Rational parse_rational(const std::string &text);

/// Exact binary value of a double.
Rational to_rational(double value);

} // namespace crossperc
