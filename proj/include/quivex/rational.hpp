#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "quivex/error.hpp"

namespace quivex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q". Used for all rational-valued CLI flags.
inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt num(s.substr(0, slash));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) fail(errc::malformed_input, "zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    fail(errc::malformed_input, "cannot parse rational '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace quivex
