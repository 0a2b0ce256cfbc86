#include "knotconc/seifert.hpp"

#include "knotconc/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace knotconc {

SeifertMatrix::SeifertMatrix(IntMatrix entries, std::string name) : v_(std::move(entries)), name_(std::move(name))
{
    const std::size_t n = v_.size();
    for (const auto& row : v_)
        if (row.size() != n)
            throw InputError("Seifert matrix must be square");
    LaurentMatrix skew(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            skew[i][j] = LaurentPoly(v_[i][j] - v_[j][i]);
    LaurentPoly d = determinant(std::move(skew));
    if (d != LaurentPoly(1) && d != LaurentPoly(-1))
        throw InputError("Seifert matrix" + (name_.empty() ? std::string() : " '" + name_ + "'") +
                         " fails det(V - V^T) = +-1");
}

SeifertMatrix SeifertMatrix::mirror() const
{
    const std::size_t n = v_.size();
    IntMatrix m(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = -v_[j][i];
    return SeifertMatrix(std::move(m), name_.empty() ? name_ : "mirror(" + name_ + ")");
}

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b)
{
    const std::size_t n = a.size(), m = b.size();
    IntMatrix out(n + m, std::vector<long>(n + m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = a.at(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out[n + i][n + j] = b.at(i, j);
    std::string name;
    if (!a.name().empty() && !b.name().empty())
        name = a.name() + "#" + b.name();
    return SeifertMatrix(std::move(out), name);
}

LaurentMatrix alexander_presentation(const SeifertMatrix& v)
{
    const std::size_t n = v.size();
    LaurentMatrix a(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = LaurentPoly::monomial(v.at(i, j), 1) - LaurentPoly(v.at(j, i));
    return a;
}

LaurentPoly alexander_poly(const SeifertMatrix& v) { return normalize(determinant(alexander_presentation(v))); }

int arf(const SeifertMatrix& v)
{
    BigInt d = Rational(abs(alexander_poly(v).eval(-1))).get_num();
    unsigned long r = mpz_fdiv_ui(d.get_mpz_t(), 8);
    return (r == 1 || r == 7) ? 0 : 1;
}

// ------------------------------------------------------------ x = t + 1/t

poly::Dense symmetrize_in_x(const LaurentPoly& delta)
{
    LaurentPoly d = normalize(delta);
    const auto& c = d.dense();
    int deg = d.span();
    if (deg % 2 != 0)
        throw std::invalid_argument("Alexander polynomial of odd degree");
    for (int k = 0; k <= deg; ++k)
        if (c[static_cast<std::size_t>(k)] != c[static_cast<std::size_t>(deg - k)])
            throw std::invalid_argument("Alexander polynomial is not palindromic");
    int n = deg / 2;
    // D_k(x) = t^k + t^-k: D_0 = 2, D_1 = x, D_{k+1} = x D_k - D_{k-1}
    poly::Dense prev{2}, cur{0, 1};
    poly::Dense out{c[static_cast<std::size_t>(n)]};
    out.resize(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 1; k <= n; ++k) {
        const Rational& ck = c[static_cast<std::size_t>(n + k)];
        for (std::size_t i = 0; i < cur.size(); ++i)
            out[i] += ck * cur[i];
        poly::Dense next(cur.size() + 1, Rational(0));
        for (std::size_t i = 0; i < cur.size(); ++i)
            next[i + 1] += cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    poly::trim(out);
    return out;
}

namespace {

// ------------------------------------------------------------ Q(i)

struct GaussQ {
    Rational re, im;

    bool is_zero() const { return re == 0 && im == 0; }
    GaussQ conj() const { return {re, -im}; }
    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b)
    {
        Rational n = b.re * b.re + b.im * b.im;
        GaussQ p = a * b.conj();
        return {p.re / n, p.im / n};
    }
};

using HMatrix = std::vector<std::vector<GaussQ>>;

// Signature of a Hermitian matrix by congruence (symmetric) elimination.
int hermitian_signature(HMatrix h)
{
    const std::size_t n = h.size();
    std::vector<bool> done(n, false);
    int sig = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t k = n;
        for (std::size_t i = 0; i < n && k == n; ++i)
            if (!done[i] && h[i][i].re != 0)
                k = i;
        if (k == n) {
            // no diagonal pivot: make one from an off-diagonal entry
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && !h[i][j].is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n)
                break;   // remaining block is zero
            // e_pi -> e_pi + c e_pj with c = conj(h[pi][pj]) gives 2|h_ij|^2 on the diagonal
            GaussQ c = h[pi][pj].conj();
            for (std::size_t r = 0; r < n; ++r)
                h[r][pi] = h[r][pi] + h[r][pj] * c;
            for (std::size_t r = 0; r < n; ++r)
                h[pi][r] = h[pi][r] + c.conj() * h[pj][r];
            k = pi;
        }
        const Rational pivot = h[k][k].re;
        sig += pivot > 0 ? 1 : -1;
        done[k] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || h[i][k].is_zero())
                continue;
            GaussQ f = h[i][k] / GaussQ{pivot, 0};
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j])
                    h[i][j] = h[i][j] - f * h[k][j];
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i])
                h[i][k] = GaussQ{};
    }
    return sig;
}

// ------------------------------------------------------------ Sturm

struct Sturm {
    std::vector<poly::Dense> seq;

    explicit Sturm(const poly::Dense& p)
    {
        seq.push_back(p);
        seq.push_back(poly::derivative(p));
        while (poly::degree(seq.back()) > 0) {
            poly::Dense r = poly::divmod(seq[seq.size() - 2], seq.back()).second;
            if (r.empty())
                break;
            for (auto& c : r)
                c = -c;
            seq.push_back(std::move(r));
        }
    }

    int variations(const Rational& x) const
    {
        int count = 0, last = 0;
        for (const auto& q : seq) {
            int s = sgn(poly::eval(q, x));
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    }

    // roots in (a, b], a and b not roots
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
};

void isolate(const poly::Dense& p, const Sturm& st, const Rational& a, const Rational& b, int n,
             std::vector<RootInterval>& out)
{
    if (n == 0)
        return;
    if (n == 1) {
        out.push_back({a, b});
        return;
    }
    Rational mid = (a + b) / 2;
    if (poly::eval(p, mid) != 0) {
        isolate(p, st, a, mid, st.count(a, mid), out);
        isolate(p, st, mid, b, st.count(mid, b), out);
        return;
    }
    // exact rational root: carve out a neighbourhood containing only it
    Rational delta = (b - a) / 4;
    while (true) {
        Rational l = mid - delta, r = mid + delta;
        if (poly::eval(p, l) != 0 && poly::eval(p, r) != 0 && st.count(l, r) == 1) {
            out.push_back({mid, mid});
            isolate(p, st, a, l, st.count(a, l), out);
            isolate(p, st, r, b, st.count(r, b), out);
            return;
        }
        delta /= 2;
    }
}

// Halves the isolating interval, keeping the sign-change invariant.
void bisect(const poly::Dense& p, RootInterval& iv)
{
    if (iv.degenerate())
        return;
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sgn(poly::eval(p, mid));
    if (sm == 0) {
        iv.lo = iv.hi = mid;
        return;
    }
    if (sm == sgn(poly::eval(p, iv.lo)))
        iv.lo = mid;
    else
        iv.hi = mid;
}

// x(s) = 2 (1 - s^2)/(1 + s^2) = 2 cos(theta) for s = tan(theta/2)
Rational x_of_tangent(const Rational& s) { return 2 * (1 - s * s) / (1 + s * s); }

// A rational s > 0 with lower < x(s) < upper; x is decreasing in s.
Rational tangent_in_gap(const Rational& lower, const Rational& upper)
{
    Rational lo = 0, hi = 1;
    while (x_of_tangent(hi) >= upper)
        hi *= 2;
    while (true) {
        Rational m = (lo + hi) / 2;
        Rational x = x_of_tangent(m);
        if (x >= upper)
            lo = m;
        else if (x <= lower)
            hi = m;
        else
            return m;
    }
}

Rational width(const RootInterval& iv) { return iv.hi - iv.lo; }

} // namespace

int tristram_signature_at_tangent(const SeifertMatrix& v, const Rational& s)
{
    const std::size_t n = v.size();
    HMatrix h(n, std::vector<GaussQ>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h[i][j] = GaussQ{s * (v.at(i, j) + v.at(j, i)), Rational(v.at(j, i) - v.at(i, j))};
    return hermitian_signature(std::move(h));
}

double JumpLocus::turns() const
{
    double mid = Rational((x.lo + x.hi) / 2).get_d();
    double t = std::acos(std::clamp(mid / 2, -1.0, 1.0)) / (2 * std::numbers::pi);
    return upper_half ? t : 1 - t;
}

int SignatureFunction::sample(double u) const
{
    std::size_t k = 0;
    while (k < jumps.size() && jumps[k].turns() < u)
        ++k;
    return values[k];
}

SignatureFunction signature_function(const SeifertMatrix& v)
{
    SignatureFunction out;
    LaurentPoly delta = alexander_poly(v);
    if (delta.span() <= 0) {
        out.values = {0};
        out.x_polynomial = {1};
        return out;
    }
    poly::Dense px = symmetrize_in_x(delta);
    poly::Dense sq = poly::divmod(px, poly::gcd(px, poly::derivative(px))).first;
    out.x_polynomial = sq;
    Sturm st(sq);
    std::vector<RootInterval> roots;
    isolate(sq, st, Rational(-2), Rational(2), st.count(-2, 2), roots);
    // theta increasing on the upper half means x decreasing
    std::sort(roots.begin(), roots.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo > b.lo; });

    // separate consecutive intervals so every arc has a sample point
    for (std::size_t k = 0; k + 1 < roots.size(); ++k)
        while (roots[k + 1].hi >= roots[k].lo) {
            if (width(roots[k]) >= width(roots[k + 1]))
                bisect(sq, roots[k]);
            else
                bisect(sq, roots[k + 1]);
        }
    if (!roots.empty()) {
        while (roots.front().hi >= 2)
            bisect(sq, roots.front());
        while (roots.back().lo <= -2)
            bisect(sq, roots.back());
    }

    const std::size_t r = roots.size();
    std::vector<int> upper(r + 1);
    for (std::size_t k = 0; k <= r; ++k) {
        Rational hi = k == 0 ? Rational(2) : roots[k - 1].lo;
        Rational lo = k == r ? Rational(-2) : roots[k].hi;
        upper[k] = tristram_signature_at_tangent(v, tangent_in_gap(lo, hi));
    }
    if (upper.front() != 0)
        throw std::logic_error("signature near omega = 1 is nonzero");

    // narrow enough that turns() is accurate to double precision
    const Rational display_width(BigInt(1), BigInt(1) << 52);
    for (auto& iv : roots)
        while (!iv.degenerate() && width(iv) > display_width)
            bisect(sq, iv);

    for (const auto& iv : roots)
        out.jumps.push_back({iv, true});
    for (std::size_t k = r; k-- > 0;)
        out.jumps.push_back({roots[k], false});
    out.values = upper;
    for (std::size_t k = r; k-- > 0;)
        out.values.push_back(upper[k]);
    return out;
}

namespace {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

    Rational to_rational()
    {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

private:
    mpfr_t v_;
};

// Enclosure of rho0 with the given jump intervals and working precision.
std::pair<Rational, Rational> rho0_enclosure(const std::vector<RootInterval>& roots, const std::vector<int>& upper,
                                             mpfr_prec_t prec)
{
    Mpfr slo(prec), shi(prec), arg(prec), th_lo(prec), th_hi(prec), tmp(prec);
    mpfr_set_zero(slo.get(), 1);
    mpfr_set_zero(shi.get(), 1);
    for (std::size_t j = 0; j < roots.size(); ++j) {
        long w = upper[j] - upper[j + 1];
        if (w == 0)
            continue;
        // theta = arccos(x/2) is decreasing in x
        Rational a = roots[j].hi / 2;
        mpfr_set_q(arg.get(), a.get_mpq_t(), MPFR_RNDU);
        mpfr_set_si(tmp.get(), 1, MPFR_RNDN);
        mpfr_min(arg.get(), arg.get(), tmp.get(), MPFR_RNDU);
        mpfr_acos(th_lo.get(), arg.get(), MPFR_RNDD);
        Rational b = roots[j].lo / 2;
        mpfr_set_q(arg.get(), b.get_mpq_t(), MPFR_RNDD);
        mpfr_set_si(tmp.get(), -1, MPFR_RNDN);
        mpfr_max(arg.get(), arg.get(), tmp.get(), MPFR_RNDD);
        mpfr_acos(th_hi.get(), arg.get(), MPFR_RNDU);
        if (w > 0) {
            mpfr_mul_si(tmp.get(), th_lo.get(), w, MPFR_RNDD);
            mpfr_add(slo.get(), slo.get(), tmp.get(), MPFR_RNDD);
            mpfr_mul_si(tmp.get(), th_hi.get(), w, MPFR_RNDU);
            mpfr_add(shi.get(), shi.get(), tmp.get(), MPFR_RNDU);
        } else {
            mpfr_mul_si(tmp.get(), th_hi.get(), w, MPFR_RNDD);
            mpfr_add(slo.get(), slo.get(), tmp.get(), MPFR_RNDD);
            mpfr_mul_si(tmp.get(), th_lo.get(), w, MPFR_RNDU);
            mpfr_add(shi.get(), shi.get(), tmp.get(), MPFR_RNDU);
        }
    }
    Mpfr pi_lo(prec), pi_hi(prec), qlo(prec), qhi(prec);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
    // S / pi with pi > 0
    mpfr_div(qlo.get(), slo.get(), mpfr_sgn(slo.get()) >= 0 ? pi_hi.get() : pi_lo.get(), MPFR_RNDD);
    mpfr_div(qhi.get(), shi.get(), mpfr_sgn(shi.get()) >= 0 ? pi_lo.get() : pi_hi.get(), MPFR_RNDU);
    Rational base = upper.back();
    return {base + qlo.to_rational(), base + qhi.to_rational()};
}

} // namespace

CertifiedReal rho0(const SignatureFunction& sig, const Rational& tol)
{
    if (tol <= 0)
        throw std::invalid_argument("rho0: tolerance must be positive");
    const std::size_t r = sig.jumps.size() / 2;
    if (r == 0)
        return {Rational(0), Rational(0)};
    std::vector<RootInterval> roots;
    for (std::size_t j = 0; j < r; ++j)
        roots.push_back(sig.jumps[j].x);
    std::vector<int> upper(sig.values.begin(), sig.values.begin() + static_cast<std::ptrdiff_t>(r) + 1);

    mpfr_prec_t prec = 64;
    while (true) {
        auto [lo, hi] = rho0_enclosure(roots, upper, prec);
        Rational radius = (hi - lo) / 2;
        if (radius <= tol)
            return {(lo + hi) / 2, radius};
        for (auto& iv : roots)
            for (int i = 0; i < 8; ++i)
                bisect(sig.x_polynomial, iv);
        prec += 32;
    }
}

CertifiedReal rho0(const SeifertMatrix& v, const Rational& tol) { return rho0(signature_function(v), tol); }

} // namespace knotconc
