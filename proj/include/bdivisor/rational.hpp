#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bdivisor {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical "p/q" with gcd(p,q) = 1 and q > 0. Integers keep the "/1".
std::string to_string(const Rational& r);

/// Accepts "p/q" or a bare integer "p".
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

bool is_integer(const Rational& r);

/// Exact integer value of an integral rational; throws std::logic_error otherwise.
BigInt require_integer(const Rational& r, std::string_view what);

/// x - floor(x), exact.
Rational fractional_part(const Rational& x);

BigInt floor(const Rational& x);

/// Shortest decimal string that round-trips to the same double.
std::string to_decimal(double x);

} // namespace bdivisor
