#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "shl/errors.hpp"

namespace shl {

// Exact rational scalar: always lowest terms, positive denominator.
// GMP keeps mpq_class canonical through arithmetic; only string input
// needs an explicit canonicalize.
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// The two-argument mpq_class constructor does not canonicalize; GMP
// comparisons and arithmetic silently misbehave on non-canonical
// values. Route every numerator/denominator pair through here.
inline Rational make_rational(long num, long den) {
  if (den == 0) fail(ErrorClass::parse, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p" or "p/q" with optional leading '-', base 10.
inline Rational parse_rational(std::string_view s) {
  auto bad = [&]() -> Rational { fail(ErrorClass::parse, "bad rational literal: '" + std::string(s) + "'"); };
  if (s.empty()) return bad();
  std::size_t pos = 0;
  if (s[pos] == '-' || s[pos] == '+') ++pos;
  std::size_t digits = 0;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos, ++digits;
  if (digits == 0) return bad();
  if (pos != s.size()) {
    if (s[pos] != '/') return bad();
    ++pos;
    std::size_t den_digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos, ++den_digits;
    if (den_digits == 0 || pos != s.size()) return bad();
  }
  Rational q(std::string(s), 10);
  if (sgn(q.get_den()) == 0) fail(ErrorClass::parse, "zero denominator in rational: '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace shl
