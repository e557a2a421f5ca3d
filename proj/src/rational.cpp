#include "tropws/rational.hpp"

#include "tropws/errors.hpp"

#include <cctype>

namespace tropws {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && s[0] == '-') {
    negative = true;
    s = s.substr(1);
  }
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) input_error("ParseError", "not a rational: '" + text + "'");
  Integer n(num), d(den);
  if (d == 0) input_error("ParseError", "zero denominator: '" + text + "'");
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Integer lcm_denominators(const Rational& a, const Integer& acc) {
  Integer d = denominator(a);
  return acc / boost::multiprecision::gcd(acc, d) * d;
}

}  // namespace tropws
