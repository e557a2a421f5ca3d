#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace tropws {

// Expression templates off: values behave like plain value types in ternaries and std::min.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

// Parses "n" or "p/q" (optional leading minus). Throws Error(ParseError) otherwise.
Rational parse_rational(const std::string& text);

// Canonical text form: "n" for integers, "p/q" in lowest terms otherwise.
std::string to_string(const Rational& x);

double to_double(const Rational& x);

Integer lcm_denominators(const Rational& a, const Integer& acc);

}  // namespace tropws
