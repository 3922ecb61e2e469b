#pragma once

// Exact integer and rational arithmetic. Nothing in the library uses floating
// point; depths live in (1/e)Z and lattice data in Z.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "dcover/errors.hpp"

namespace dcover {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return den(q) == 1; }

inline Integer floor_of(const Rational& q) {
  Integer n = num(q), d = den(q);
  Integer f = n / d;
  if (n < 0 && f * d != n) --f;
  return f;
}

/// Narrowing conversion; throws if the value does not fit.
inline std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw Error("integer out of 64-bit range: " + v.str());
  }
  return static_cast<std::int64_t>(v);
}

/// "n" for integers, otherwise "n/d" in lowest terms.
inline std::string format_rational(const Rational& q) {
  if (is_integral(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

/// Parses "n", "-n" or "n/d" (d > 0). The result is normalized.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s, bool allow_sign) -> Integer {
    std::size_t i = 0;
    bool neg = false;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      i = 1;
    }
    if (i >= s.size()) throw ParseError("not a rational number: '" + std::string(text) + "'");
    Integer v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("not a rational number: '" + std::string(text) + "'");
      v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  Integer n = parse_int(text.substr(0, slash), true);
  Integer d = parse_int(text.substr(slash + 1), false);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

/// p-adic valuation of a non-zero integer.
inline int valuation(Integer n, const Integer& p) {
  if (n == 0) throw Error("valuation of zero is infinite");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// p-adic valuation of a non-zero rational.
inline int valuation(const Rational& q, const Integer& p) {
  return valuation(num(q), p) - valuation(den(q), p);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace dcover
