#include "knotconc/laurent.hpp"

#include "knotconc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace knotconc {

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw InputError("empty rational literal");
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            BigInt num(s.substr(0, slash), 10);
            BigInt den(s.substr(slash + 1), 10);
            if (den == 0)
                throw InputError("zero denominator in '" + text + "'");
            return make_rational(num, den);
        }
        // decimal / scientific notation, converted exactly
        std::size_t epos = s.find_first_of("eE");
        std::string mant = s.substr(0, epos);
        long exp10 = 0;
        if (epos != std::string::npos)
            exp10 = std::stol(s.substr(epos + 1));
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant.erase(0, 1);
        }
        std::string digits;
        long frac = 0;
        bool seen_dot = false;
        for (char ch : mant) {
            if (ch == '.') {
                if (seen_dot)
                    throw InputError("malformed number '" + text + "'");
                seen_dot = true;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                digits += ch;
                if (seen_dot)
                    ++frac;
            } else {
                throw InputError("malformed number '" + text + "'");
            }
        }
        if (digits.empty())
            throw InputError("malformed number '" + text + "'");
        BigInt num(digits, 10);
        if (neg)
            num = -num;
        long scale = exp10 - frac;
        BigInt pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
        return scale >= 0 ? Rational(num * pow10) : make_rational(num, pow10);
    } catch (const std::invalid_argument&) {
        throw InputError("malformed number '" + text + "'");
    } catch (const std::out_of_range&) {
        throw InputError("number out of range '" + text + "'");
    }
}

LaurentPoly::LaurentPoly(const Rational& c)
{
    if (c != 0)
        coeffs_.push_back(c);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int exponent)
{
    LaurentPoly p(c);
    if (!p.is_zero())
        p.lo_ = exponent;
    return p;
}

LaurentPoly LaurentPoly::from_coeffs(int lo, std::vector<Rational> coeffs)
{
    LaurentPoly p;
    p.lo_ = lo;
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
}

void LaurentPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0)
        ++k;
    if (k > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
        lo_ += static_cast<int>(k);
    }
    if (coeffs_.empty())
        lo_ = 0;
}

Rational LaurentPoly::coeff(int exponent) const
{
    if (exponent < lo_ || exponent > max_exp())
        return 0;
    return coeffs_[static_cast<std::size_t>(exponent - lo_)];
}

std::vector<std::pair<int, Rational>> LaurentPoly::terms() const
{
    std::vector<std::pair<int, Rational>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            out.emplace_back(lo_ + static_cast<int>(i), coeffs_[i]);
    return out;
}

LaurentPoly LaurentPoly::shifted(int k) const
{
    LaurentPoly p = *this;
    if (!p.is_zero())
        p.lo_ += k;
    return p;
}

LaurentPoly LaurentPoly::conj() const
{
    if (is_zero())
        return {};
    std::vector<Rational> rev(coeffs_.rbegin(), coeffs_.rend());
    return from_coeffs(-max_exp(), std::move(rev));
}

Rational LaurentPoly::eval(const Rational& x) const
{
    if (is_zero())
        return 0;
    if (x == 0) {
        if (lo_ < 0)
            throw std::domain_error("Laurent polynomial evaluated at 0");
        return coeff(0);
    }
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    Rational scale = 1;
    Rational base = lo_ >= 0 ? x : Rational(1) / x;
    for (int i = 0; i < std::abs(lo_); ++i)
        scale *= base;
    return acc * scale;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_)
        c = -c;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    int lo = std::min(lo_, o.lo_);
    int hi = std::max(max_exp(), o.max_exp());
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        c[static_cast<std::size_t>(lo_ - lo) + i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        c[static_cast<std::size_t>(o.lo_ - lo) + i] += o.coeffs_[i];
    lo_ = lo;
    coeffs_ = std::move(c);
    trim();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LaurentPoly::from_coeffs(a.lo_ + b.lo_, std::move(c));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c)
{
    if (c == 0)
        return *this = LaurentPoly();
    for (auto& x : coeffs_)
        x *= c;
    return *this;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.span() != b.span())
        return a.span() < b.span();
    if (a.lo_ != b.lo_)
        return a.lo_ < b.lo_;
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
        if (a.coeffs_[i] != b.coeffs_[i])
            return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
}

std::string LaurentPoly::str(char var) const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c == 0)
            continue;
        int e = lo_ + static_cast<int>(i);
        Rational mag = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        std::string cs;
        if (e == 0)
            cs = mag.get_str();
        else if (mag != 1)
            cs = mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")";
        out += cs;
        if (e != 0) {
            out += var;
            if (e != 1)
                out += "^" + std::to_string(e);
        }
    }
    return out;
}

LaurentPoly normalize(const LaurentPoly& f)
{
    if (f.is_zero())
        return {};
    BigInt den_lcm = 1;
    for (const auto& c : f.dense())
        if (c != 0)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    BigInt num_gcd = 0;
    for (const auto& c : f.dense())
        if (c != 0) {
            BigInt n = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        }
    Rational scale = make_rational(den_lcm, num_gcd);
    if (f.leading() < 0)
        scale = -scale;
    std::vector<Rational> c;
    c.reserve(f.dense().size());
    for (const auto& x : f.dense())
        c.push_back(x * scale);
    return LaurentPoly::from_coeffs(0, std::move(c));
}

namespace poly {

void trim(Dense& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Dense derivative(const Dense& p)
{
    Dense d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(d);
    return d;
}

std::pair<Dense, Dense> divmod(const Dense& a, const Dense& b)
{
    if (b.empty())
        throw std::domain_error("polynomial division by zero");
    Dense r = a;
    trim(r);
    if (r.size() < b.size())
        return {Dense{}, r};
    Dense q(r.size() - b.size() + 1);
    Rational inv_lead = Rational(1) / b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        Rational c = r[k + b.size() - 1] * inv_lead;
        q[k] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[k + j] -= c * b[j];
    }
    trim(q);
    trim(r);
    return {q, r};
}

Dense gcd(const Dense& a, const Dense& b)
{
    Dense x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        auto r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        Rational inv = Rational(1) / x.back();
        for (auto& c : x)
            c *= inv;
    }
    return x;
}

Rational eval(const Dense& p, const Rational& x)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

} // namespace poly

std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b)
{
    if (b.is_zero())
        throw std::domain_error("Laurent division by zero");
    if (a.is_zero())
        return {LaurentPoly(), LaurentPoly()};
    // a = t^ma a', b = t^mb b' with a', b' genuine polynomials
    auto [q, r] = poly::divmod(a.dense(), b.dense());
    LaurentPoly qq = LaurentPoly::from_coeffs(a.min_exp() - b.min_exp(), std::move(q));
    LaurentPoly rr = LaurentPoly::from_coeffs(a.min_exp(), std::move(r));
    return {qq, rr};
}

bool divides(const LaurentPoly& d, const LaurentPoly& f)
{
    if (d.is_zero())
        return f.is_zero();
    return divmod(f, d).second.is_zero();
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::domain_error("inexact Laurent division");
    return q;
}

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly x = a, y = b;
    while (!y.is_zero()) {
        LaurentPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return normalize(x);
}

LaurentPoly lcm(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    return normalize(exact_div(a * b, gcd(a, b)));
}

Bezout extended_gcd(const LaurentPoly& a, const LaurentPoly& b)
{
    // invariant: r0 = s0 a + u0 b, r1 = s1 a + u1 b
    LaurentPoly r0 = a, r1 = b, s0 = 1, s1, u0, u1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        LaurentPoly s2 = s0 - q * s1, u2 = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r0.is_zero())
        return {LaurentPoly(), LaurentPoly(), LaurentPoly()};
    LaurentPoly g = normalize(r0);
    LaurentPoly unit = exact_div(g, r0);   // g = unit * r0 with unit = c t^k
    return {g, s0 * unit, u0 * unit};
}

LaurentPoly reduce_mod(const LaurentPoly& f, const LaurentPoly& d)
{
    if (d.is_zero())
        throw std::domain_error("reduction modulo zero");
    if (f.is_zero() || d.is_unit())
        return {};
    const poly::Dense& dd = d.dense();   // d(t) = t^k dd(t), dd(0) != 0
    auto rem = [&](const poly::Dense& p) { return poly::divmod(p, dd).second; };
    poly::Dense r = rem(f.dense());
    // (d) = (dd) since t is a unit; multiply the reduced f' back by t^min_exp(f)
    int shift = f.min_exp();
    if (shift > 0) {
        for (int i = 0; i < shift; ++i) {
            r.insert(r.begin(), Rational(0));
            r = rem(r);
        }
    } else if (shift < 0) {
        // t^{-1} = -(dd - dd0)/(dd0 t) mod dd
        poly::Dense tinv(dd.begin() + 1, dd.end());
        Rational c = -Rational(1) / dd.front();
        for (auto& x : tinv)
            x *= c;
        poly::trim(tinv);
        for (int i = 0; i < -shift; ++i) {
            poly::Dense prod(r.size() + tinv.size(), Rational(0));
            for (std::size_t a = 0; a < r.size(); ++a)
                for (std::size_t b = 0; b < tinv.size(); ++b)
                    prod[a + b] += r[a] * tinv[b];
            poly::trim(prod);
            r = rem(prod);
        }
    }
    return LaurentPoly::from_coeffs(0, std::move(r));
}

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    // expr := ['+'|'-'] product {('+'|'-') product}
    // product := power {['*'] power}
    // power := atom ['^' integer]
    // atom := number | 't' | '(' expr ')'
    LaurentPoly parse()
    {
        skip();
        if (pos_ >= s_.size())
            fail("empty polynomial");
        LaurentPoly r = expr();
        skip();
        if (pos_ < s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    LaurentPoly expr()
    {
        LaurentPoly acc;
        bool first = true;
        while (true) {
            skip();
            int sgn = 1;
            if (peek('+') || peek('-')) {
                sgn = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            acc += product() * Rational(sgn);
            first = false;
        }
        return acc;
    }

    LaurentPoly product()
    {
        LaurentPoly acc = power();
        while (true) {
            skip();
            if (peek('*')) {
                ++pos_;
                acc *= power();
            } else if (peek('t') || peek('(') || digit()) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    LaurentPoly power()
    {
        LaurentPoly base = atom();
        skip();
        if (!peek('^'))
            return base;
        ++pos_;
        skip();
        std::size_t start = pos_;
        if (peek('-') || peek('+'))
            ++pos_;
        while (digit())
            ++pos_;
        if (pos_ == start || !std::isdigit(static_cast<unsigned char>(s_[pos_ - 1])))
            fail("missing exponent");
        int e = 0;
        try {
            e = std::stoi(s_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            fail("bad exponent");
        }
        if (base.is_unit())
            return LaurentPoly::monomial(pow_rational(base.leading(), e),
                                         base.min_exp() * e);
        if (e < 0)
            fail("negative power of a non-monomial");
        if (e > 4096)
            fail("exponent too large");
        LaurentPoly r(1);
        for (int i = 0; i < e; ++i)
            r *= base;
        return r;
    }

    LaurentPoly atom()
    {
        skip();
        if (peek('(')) {
            ++pos_;
            LaurentPoly inner = expr();
            skip();
            if (!peek(')'))
                fail("unbalanced parenthesis");
            ++pos_;
            return inner;
        }
        if (peek('t')) {
            ++pos_;
            return LaurentPoly::t();
        }
        if (digit()) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                        s_[pos_] == '.'))
                ++pos_;
            return LaurentPoly(parse_rational(s_.substr(start, pos_ - start)));
        }
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        fail(std::string("unexpected '") + s_[pos_] + "'");
    }

    static Rational pow_rational(const Rational& c, int e)
    {
        Rational r = 1;
        const Rational b = e < 0 ? Rational(1 / c) : c;
        for (int i = 0; i < std::abs(e); ++i)
            r *= b;
        return r;
    }

    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
    bool digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what)
    {
        throw InputError("cannot parse polynomial '" + s_ + "': " + what);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentPoly parse_laurent(const std::string& text) { return PolyParser(text).parse(); }

} // namespace knotconc

namespace knotconc {

LaurentPoly determinant(LaurentMatrix m)
{
    const std::size_t n = m.size();
    LaurentPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero())
            ++piv;
        if (piv == n)
            return LaurentPoly();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = LaurentPoly();
        }
        prev = m[k][k];
    }
    if (n == 0)
        return LaurentPoly(1);
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

std::string to_decimal(const Rational& q, int places)
{
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    Rational scaled = abs(q) * scale;
    BigInt n = scaled.get_num() / scaled.get_den();
    if (2 * (scaled.get_num() - n * scaled.get_den()) >= scaled.get_den())
        n += 1;
    std::string digits = n.get_str();
    if (places > 0) {
        if (static_cast<int>(digits.size()) <= places)
            digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    if (q < 0 && n != 0)
        digits.insert(0, "-");
    return digits;
}

} // namespace knotconc
