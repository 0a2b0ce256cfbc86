#pragma once

#include "knotconc/rational.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace knotconc {

/// Univariate Laurent polynomial over Q, the PID Q[t, 1/t].
///
/// Stored densely from the lowest exponent upward; both end coefficients are
/// nonzero, so the zero polynomial is the empty vector and every value has one
/// representation.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c);   // NOLINT: constants convert implicitly
    LaurentPoly(long c) : LaurentPoly(Rational(c)) {}   // NOLINT

    static LaurentPoly monomial(const Rational& c, int exponent);
    static LaurentPoly t() { return monomial(1, 1); }
    /// coeffs[i] is the coefficient of t^(lo + i).
    static LaurentPoly from_coeffs(int lo, std::vector<Rational> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    /// Units of Q[t, 1/t] are c t^k with c != 0.
    bool is_unit() const { return coeffs_.size() == 1; }
    int min_exp() const { return lo_; }
    int max_exp() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    /// max_exp - min_exp; the Euclidean degree. Zero has span -1.
    int span() const { return static_cast<int>(coeffs_.size()) - 1; }

    Rational coeff(int exponent) const;
    const Rational& leading() const { return coeffs_.back(); }
    const Rational& trailing() const { return coeffs_.front(); }
    const std::vector<Rational>& dense() const { return coeffs_; }
    /// Nonzero terms in ascending exponent order.
    std::vector<std::pair<int, Rational>> terms() const;

    LaurentPoly shifted(int k) const;
    /// f(t) -> f(1/t)
    LaurentPoly conj() const;
    Rational eval(const Rational& x) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b)
    {
        return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
    }
    /// Total order: by span, then exponent offset, then coefficients from the
    /// top degree down. Used for deterministic output ordering only.
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

    std::string str(char var = 't') const;

private:
    void trim();

    int lo_ = 0;
    std::vector<Rational> coeffs_;
};

/// Unique associate with lowest exponent 0, integer primitive coefficients and
/// positive leading coefficient. Two polynomials are equal up to units iff
/// their normal forms agree.
LaurentPoly normalize(const LaurentPoly& f);
inline bool associates(const LaurentPoly& a, const LaurentPoly& b) { return normalize(a) == normalize(b); }

/// Euclidean division in Q[t, 1/t]: a = q b + r with r = 0 or span(r) < span(b).
std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b);
bool divides(const LaurentPoly& d, const LaurentPoly& f);
/// a / b, throwing std::domain_error when b does not divide a.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lcm(const LaurentPoly& a, const LaurentPoly& b);
/// Bezout coefficients: s a + u b = gcd(a, b) (normalized gcd).
struct Bezout {
    LaurentPoly g, s, u;
};
Bezout extended_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Canonical representative of f in Q[t, 1/t]/(d): a polynomial with
/// exponents in [0, span(d)). d must be nonzero.
LaurentPoly reduce_mod(const LaurentPoly& f, const LaurentPoly& d);

using LaurentMatrix = std::vector<std::vector<LaurentPoly>>;

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
/// The empty matrix has determinant 1.
LaurentPoly determinant(LaurentMatrix m);

/// Parses sums of monomials such as "t^3 - 2t^2 + t - 1", "(1/2)t^-1 + 3",
/// "2*t". Throws InputError on malformed text.
LaurentPoly parse_laurent(const std::string& text);

// Dense polynomial helpers (nonnegative exponents, ascending coefficients).
namespace poly {
using Dense = std::vector<Rational>;
void trim(Dense& p);
Dense derivative(const Dense& p);
std::pair<Dense, Dense> divmod(const Dense& a, const Dense& b);
Dense gcd(const Dense& a, const Dense& b);   // monic
Rational eval(const Dense& p, const Rational& x);
inline int degree(const Dense& p) { return static_cast<int>(p.size()) - 1; }
} // namespace poly

} // namespace knotconc
