#pragma once

#include "knotconc/laurent.hpp"

#include <string>

namespace knotconc {

/// An element of Q(t)/Q[t, 1/t], the value group of the Blanchfield form.
///
/// Canonical form: denominator monic with lowest exponent 0, numerator a
/// polynomial of degree below the denominator's, coprime to it. Zero is 0/1.
class RationalFunctionModP {
public:
    RationalFunctionModP() : den_(1) {}
    RationalFunctionModP(const LaurentPoly& num, const LaurentPoly& den);

    const LaurentPoly& numerator() const { return num_; }
    const LaurentPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunctionModP operator+(const RationalFunctionModP& o) const;
    RationalFunctionModP operator-(const RationalFunctionModP& o) const;
    RationalFunctionModP operator-() const { return {-num_, den_}; }
    RationalFunctionModP operator*(const LaurentPoly& f) const { return {num_ * f, den_}; }
    friend RationalFunctionModP operator*(const LaurentPoly& f, const RationalFunctionModP& x) { return x * f; }
    /// t -> 1/t
    RationalFunctionModP conj() const;

    friend bool operator==(const RationalFunctionModP&, const RationalFunctionModP&) = default;

    std::string str() const;

private:
    LaurentPoly num_;
    LaurentPoly den_;
};

} // namespace knotconc
