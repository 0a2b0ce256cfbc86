#pragma once

#include <gmpxx.h>

#include <string>

namespace knotconc {

using BigInt = mpz_class;
using Rational = mpq_class;   // always canonical: gcd(num, den) = 1, den > 0

inline Rational make_rational(const BigInt& num, const BigInt& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "3", "-2/7" or a decimal/scientific literal such as "1e-9" exactly.
Rational parse_rational(const std::string& text);

// Decimal rendering rounded half away from zero to the given number of places.
std::string to_decimal(const Rational& q, int places);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace knotconc
