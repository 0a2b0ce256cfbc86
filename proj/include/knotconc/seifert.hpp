#pragma once

#include "knotconc/laurent.hpp"

#include <string>
#include <vector>

namespace knotconc {

using IntMatrix = std::vector<std::vector<long>>;

/// Seifert matrix V of a knot: square, even size, det(V - V^T) = +-1.
class SeifertMatrix {
public:
    SeifertMatrix() = default;   // the unknot (empty matrix)
    /// Throws InputError unless V is square with det(V - V^T) = +-1.
    explicit SeifertMatrix(IntMatrix entries, std::string name = {});

    std::size_t size() const { return v_.size(); }
    long at(std::size_t i, std::size_t j) const { return v_[i][j]; }
    const IntMatrix& entries() const { return v_; }
    const std::string& name() const { return name_; }

    /// -V^T, a Seifert matrix for the mirror image.
    SeifertMatrix mirror() const;

    friend bool operator==(const SeifertMatrix& a, const SeifertMatrix& b) { return a.v_ == b.v_; }

private:
    IntMatrix v_;
    std::string name_;
};

/// Block sum: a Seifert matrix for the connected sum.
SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b);

/// tV - V^T over Q[t, 1/t]; rows are the relations of the Alexander module.
LaurentMatrix alexander_presentation(const SeifertMatrix& v);

/// normalize(det(tV - V^T)).
LaurentPoly alexander_poly(const SeifertMatrix& v);

/// Enclosure [mid - radius, mid + radius] of a real number.
struct CertifiedReal {
    Rational mid;
    Rational radius;

    Rational lo() const { return mid - radius; }
    Rational hi() const { return mid + radius; }
    bool contains(const Rational& x) const { return lo() <= x && x <= hi(); }
    bool excludes_zero() const { return !contains(0); }
    bool exact() const { return radius == 0; }

    friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b)
    {
        return {a.mid + b.mid, a.radius + b.radius};
    }
    friend CertifiedReal operator*(const Rational& c, const CertifiedReal& a) { return {c * a.mid, abs(c) * a.radius}; }
    friend bool operator==(const CertifiedReal&, const CertifiedReal&) = default;
};

/// A real root x0 of a squarefree polynomial in x = t + 1/t with |x0| < 2,
/// isolated by lo < x0 < hi (sign change at the ends) or lo = hi = x0.
struct RootInterval {
    Rational lo;
    Rational hi;

    bool degenerate() const { return lo == hi; }
};

/// A jump of the signature function at omega = exp(i theta), theta in (0, 2 pi):
/// 2 cos(theta) is the isolated root, upper_half picks theta < pi.
struct JumpLocus {
    RootInterval x;
    bool upper_half = true;

    /// theta / (2 pi) as a double, for display and sampling only.
    double turns() const;
};

/// Levine-Tristram signature sigma(omega) = sign((1 - omega) V + (1 - conj omega) V^T)
/// as a step function on the circle. values[k] holds sigma on the open arc
/// after jumps[k - 1] (counterclockwise from 1), so values.size() = jumps.size() + 1
/// and values.front() = values.back() = value_at_one = 0.
struct SignatureFunction {
    std::vector<JumpLocus> jumps;
    std::vector<int> values;
    int value_at_one = 0;

    /// sigma at angle 2 pi u, u in [0, 1); uses floating comparison with the
    /// jump abscissae, so it is meant for sampling away from jumps.
    int sample(double u) const;
    /// Squarefree polynomial in x whose roots in (-2, 2) are the jump abscissae.
    poly::Dense x_polynomial;
};

/// Symmetrized Delta written in x = t + 1/t (Delta must be palindromic).
poly::Dense symmetrize_in_x(const LaurentPoly& delta);

/// Exact signature of the Hermitian form s(V + V^T) + i(V^T - V). It is s times
/// a positive multiple of the Levine-Tristram form at omega = (1 + i s)/(1 - i s),
/// so for s > 0 it is sigma(omega) and for s < 0 it is -sigma(omega).
int tristram_signature_at_tangent(const SeifertMatrix& v, const Rational& s);

SignatureFunction signature_function(const SeifertMatrix& v);

/// Integral of the signature function over the circle of length 1, enclosed
/// with radius <= tol. Exactly 0 when there are no jumps.
CertifiedReal rho0(const SeifertMatrix& v, const Rational& tol);
CertifiedReal rho0(const SignatureFunction& sig, const Rational& tol);

/// 0 iff |Delta(-1)| = +-1 mod 8.
int arf(const SeifertMatrix& v);

} // namespace knotconc
