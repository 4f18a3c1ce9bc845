#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace csafe {

// Arbitrary-precision rational, always kept in lowest terms with a
// positive denominator (cpp_rational canonicalizes on construction).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  return Rational(num, den);
}

// Parses "p/q", "p", or "-p/q". Whitespace is not tolerated.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("rational: cannot parse '" + s + "'");
  }
}

// Renders as "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace csafe
