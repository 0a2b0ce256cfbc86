#include "knotconc/ratfunc.hpp"

#include <stdexcept>

namespace knotconc {

namespace {

// Divides f by the unit c t^k that turns d into a monic polynomial with d(0) != 0.
void make_monic(LaurentPoly& num, LaurentPoly& den)
{
    LaurentPoly unit = LaurentPoly::monomial(den.leading(), den.min_exp());
    den = exact_div(den, unit);
    num = exact_div(num, unit);
}

} // namespace

RationalFunctionModP::RationalFunctionModP(const LaurentPoly& num, const LaurentPoly& den)
{
    if (den.is_zero())
        throw std::domain_error("zero denominator in Q(t)/Q[t,1/t]");
    LaurentPoly n = num, d = den;
    make_monic(n, d);
    LaurentPoly g = gcd(n, d);
    if (!g.is_zero() && !g.is_unit()) {
        n = exact_div(n, g);
        d = exact_div(d, g);
        make_monic(n, d);
    }
    if (d.is_unit()) {
        num_ = LaurentPoly();
        den_ = LaurentPoly(1);
        return;
    }
    num_ = reduce_mod(n, d);
    den_ = d;
    if (num_.is_zero())
        den_ = LaurentPoly(1);
}

RationalFunctionModP RationalFunctionModP::operator+(const RationalFunctionModP& o) const
{
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalFunctionModP RationalFunctionModP::operator-(const RationalFunctionModP& o) const { return *this + (-o); }

RationalFunctionModP RationalFunctionModP::conj() const { return {num_.conj(), den_.conj()}; }

std::string RationalFunctionModP::str() const
{
    if (is_zero())
        return "0";
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace knotconc
