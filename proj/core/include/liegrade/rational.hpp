#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace liegrade {

/// Arbitrary-precision rational number. All core arithmetic is exact.
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "p/q" text form ("3/2", "-1", "0"); integers omit the denominator.
std::string to_string(const Rational& q);

/// Parses the output of to_string (and any string mpq accepts); throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Reduces q modulo an odd prime p; throws PrimeCollision when p divides the denominator.
std::uint64_t reduce_mod(const Rational& q, std::uint64_t p);

}  // namespace liegrade
