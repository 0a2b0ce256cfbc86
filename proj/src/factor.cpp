#include "knotconc/factor.hpp"

#include "knotconc/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace knotconc {

namespace {

// ---------------------------------------------------------------- Z[x]

using ZPoly = std::vector<BigInt>;   // ascending, trimmed

void ztrim(ZPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    ztrim(c);
    return c;
}

BigInt zcontent(const ZPoly& p)
{
    BigInt g = 0;
    for (const auto& c : p)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zprimitive(ZPoly p)
{
    ztrim(p);
    if (p.empty())
        return p;
    BigInt g = zcontent(p);
    if (p.back() < 0)
        g = -g;
    for (auto& c : p)
        c /= g;
    return p;
}

// Exact division over Z; false if b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& quotient)
{
    ZPoly r = a;
    if (r.size() < b.size())
        return r.empty();
    // cheap necessary condition on constant terms
    if (b[0] != 0 && r[0] % b[0] != 0)
        return false;
    ZPoly q(r.size() - b.size() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
        const BigInt& top = r[k + b.size() - 1];
        if (top % b.back() != 0)
            return false;
        BigInt c = top / b.back();
        q[k] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[k + j] -= c * b[j];
    }
    for (const auto& c : r)
        if (c != 0)
            return false;
    ztrim(q);
    quotient = std::move(q);
    return true;
}

BigInt mod_pos(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    if (r < 0)
        r += m;
    return r;
}

ZPoly zmod(const ZPoly& p, const BigInt& m)
{
    ZPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = mod_pos(p[i], m);
    ztrim(r);
    return r;
}

ZPoly zsymmetric(const ZPoly& p, const BigInt& m)
{
    BigInt half = m / 2;
    ZPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] = mod_pos(p[i], m);
        if (r[i] > half)
            r[i] -= m;
    }
    ztrim(r);
    return r;
}

// ---------------------------------------------------------------- F_p[x]

using PPoly = std::vector<std::int64_t>;

struct Fp {
    std::int64_t p;

    std::int64_t norm(std::int64_t a) const
    {
        a %= p;
        return a < 0 ? a + p : a;
    }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return static_cast<std::int64_t>((__int128)a * b % p); }
    std::int64_t pow(std::int64_t a, std::int64_t e) const
    {
        std::int64_t r = 1;
        a = norm(a);
        while (e > 0) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::int64_t inv(std::int64_t a) const { return pow(a, p - 2); }

    void trim(PPoly& a) const
    {
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    PPoly from(const ZPoly& z) const
    {
        PPoly r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            r[i] = static_cast<std::int64_t>(mpz_fdiv_ui(z[i].get_mpz_t(), static_cast<unsigned long>(p)));
        trim(r);
        return r;
    }
    PPoly sub(PPoly a, const PPoly& b) const
    {
        if (a.size() < b.size())
            a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i] = norm(a[i] - b[i]);
        trim(a);
        return a;
    }
    PPoly add(PPoly a, const PPoly& b) const
    {
        if (a.size() < b.size())
            a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i] = norm(a[i] + b[i]);
        trim(a);
        return a;
    }
    PPoly mulp(const PPoly& a, const PPoly& b) const
    {
        if (a.empty() || b.empty())
            return {};
        PPoly c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = (c[i + j] + mul(a[i], b[j])) % p;
        }
        trim(c);
        return c;
    }
    PPoly scale(PPoly a, std::int64_t c) const
    {
        for (auto& x : a)
            x = mul(x, norm(c));
        trim(a);
        return a;
    }
    std::pair<PPoly, PPoly> divmod(PPoly a, const PPoly& b) const
    {
        if (b.empty())
            throw std::domain_error("F_p division by zero");
        trim(a);
        if (a.size() < b.size())
            return {PPoly{}, a};
        PPoly q(a.size() - b.size() + 1, 0);
        std::int64_t il = inv(b.back());
        for (std::size_t k = q.size(); k-- > 0;) {
            std::int64_t c = mul(a[k + b.size() - 1], il);
            q[k] = c;
            if (c == 0)
                continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                a[k + j] = norm(a[k + j] - mul(c, b[j]));
        }
        trim(q);
        trim(a);
        return {q, a};
    }
    PPoly rem(const PPoly& a, const PPoly& b) const { return divmod(a, b).second; }
    PPoly monic(PPoly a) const
    {
        if (a.empty())
            return a;
        return scale(std::move(a), inv(a.back()));
    }
    PPoly gcd(PPoly a, PPoly b) const
    {
        while (!b.empty()) {
            PPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(std::move(a));
    }
    // s a + t b = 1 for coprime a, b
    std::pair<PPoly, PPoly> bezout(const PPoly& a, const PPoly& b) const
    {
        PPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            PPoly s2 = sub(s0, mulp(q, s1)), t2 = sub(t0, mulp(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.size() != 1)
            throw std::logic_error("bezout on non-coprime polynomials");
        std::int64_t il = inv(r0[0]);
        return {scale(s0, il), scale(t0, il)};
    }
    PPoly derivative(const PPoly& a) const
    {
        PPoly d;
        for (std::size_t i = 1; i < a.size(); ++i)
            d.push_back(mul(a[i], norm(static_cast<std::int64_t>(i))));
        trim(d);
        return d;
    }
    PPoly powmod(PPoly base, const BigInt& e, const PPoly& m) const
    {
        PPoly r{1};
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mulp(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = rem(mulp(r, base), m);
        }
        return r;
    }
};

// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product of
// irreducibles of degree d.
void split_equal_degree(const Fp& F, const PPoly& g, int d, std::mt19937_64& rng, std::vector<PPoly>& out)
{
    int n = static_cast<int>(g.size()) - 1;
    if (n == d) {
        out.push_back(g);
        return;
    }
    BigInt q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
    BigInt e = (q - 1) / 2;
    std::uniform_int_distribution<std::int64_t> dist(0, F.p - 1);
    while (true) {
        PPoly a(static_cast<std::size_t>(n));
        for (auto& c : a)
            c = dist(rng);
        F.trim(a);
        if (a.size() < 2)
            continue;
        PPoly b = F.sub(F.powmod(a, e, g), PPoly{1});
        PPoly h = F.gcd(g, b);
        int dh = static_cast<int>(h.size()) - 1;
        if (dh > 0 && dh < n) {
            split_equal_degree(F, h, d, rng, out);
            split_equal_degree(F, F.divmod(g, h).first, d, rng, out);
            return;
        }
    }
}

// Monic irreducible factors of a monic squarefree polynomial over F_p.
std::vector<PPoly> factor_mod_p(const Fp& F, PPoly f)
{
    std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(F.p));
    std::vector<PPoly> out;
    PPoly x{0, 1};
    PPoly h = x;
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        h = F.powmod(h, BigInt(F.p), f);
        PPoly g = F.gcd(f, F.sub(h, x));
        if (g.size() > 1) {
            split_equal_degree(F, g, d, rng, out);
            f = F.divmod(f, g).first;
            h = F.rem(h, f);
        }
    }
    if (f.size() > 1)
        out.push_back(F.monic(f));
    return out;
}

// ---------------------------------------------------------------- Hensel

ZPoly to_z(const PPoly& p)
{
    ZPoly z(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        z[i] = BigInt(static_cast<long>(p[i]));
    return z;
}

// Given f = g h mod p with g monic, returns (g_k, h_k) with f = g_k h_k mod p^k.
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const PPoly& g, const PPoly& h, const Fp& F, int k)
{
    auto [s, t] = F.bezout(g, h);
    ZPoly G = to_z(g), H = to_z(h);
    BigInt m = F.p;
    for (int j = 1; j < k; ++j) {
        ZPoly diff = f;
        ZPoly gh = zmul(G, H);
        if (diff.size() < gh.size())
            diff.resize(gh.size());
        for (std::size_t i = 0; i < gh.size(); ++i)
            diff[i] -= gh[i];
        ztrim(diff);
        for (auto& c : diff) {
            if (c % m != 0)
                throw std::logic_error("Hensel lifting invariant violated");
            c /= m;
        }
        PPoly e = F.from(diff);
        auto [q, dg] = F.divmod(F.mulp(t, e), g);
        PPoly dh = F.add(F.mulp(s, e), F.mulp(q, h));
        ZPoly DG = to_z(dg), DH = to_z(dh);
        BigInt next = m * F.p;
        if (G.size() < DG.size())
            G.resize(DG.size());
        for (std::size_t i = 0; i < DG.size(); ++i)
            G[i] += m * DG[i];
        if (H.size() < DH.size())
            H.resize(DH.size());
        for (std::size_t i = 0; i < DH.size(); ++i)
            H[i] += m * DH[i];
        G = zmod(G, next);
        H = zmod(H, next);
        m = next;
    }
    return {G, H};
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const BigInt& m) { return zmod(zmul(a, b), m); }

// Lifts monic factors of f (leading coefficient lc) from p to p^k.
std::vector<ZPoly> hensel_all(const ZPoly& f, const std::vector<PPoly>& factors, const Fp& F, int k, const BigInt& pk)
{
    if (factors.size() == 1) {
        BigInt inv;
        BigInt lc = mod_pos(f.back(), pk);
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
        ZPoly r = f;
        for (auto& c : r)
            c *= inv;
        return {zmod(r, pk)};
    }
    std::size_t half = factors.size() / 2;
    std::vector<PPoly> A(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<PPoly> B(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
    PPoly g{1}, h{1};
    for (const auto& a : A)
        g = F.mulp(g, a);
    for (const auto& b : B)
        h = F.mulp(h, b);
    h = F.scale(h, static_cast<std::int64_t>(mpz_fdiv_ui(f.back().get_mpz_t(), static_cast<unsigned long>(F.p))));
    auto [G, H] = hensel_pair(f, g, h, F, k);
    auto left = hensel_all(G, A, F, k, pk);
    auto right = hensel_all(H, B, F, k, pk);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

// ---------------------------------------------------------------- Zassenhaus

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<ZPoly> zassenhaus(const ZPoly& f)
{
    int n = zdeg(f);
    if (n <= 1)
        return {f};

    // pick the good prime (lc nonzero, squarefree image) with fewest modular factors
    std::int64_t best_p = 0;
    std::vector<PPoly> best;
    int tried = 0;
    for (std::int64_t p = 3; tried < 5 && p < 100000; p += 2) {
        if (!is_prime(p))
            continue;
        Fp F{p};
        PPoly fp = F.from(f);
        if (static_cast<int>(fp.size()) - 1 != n)
            continue;
        if (F.gcd(fp, F.derivative(fp)).size() != 1)
            continue;
        ++tried;
        auto facs = factor_mod_p(F, F.monic(fp));
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = std::move(facs);
        }
        if (best.size() == 1)
            break;
    }
    if (best_p == 0)
        throw std::logic_error("no suitable prime for factorization");
    if (best.size() == 1)
        return {f};

    Fp F{best_p};
    // Mignotte: every factor's coefficients are below 2^n ||f||_2; lc scaling adds |lc|
    BigInt norm2 = 0;
    for (const auto& c : f)
        norm2 += c * c;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    BigInt bound = root * abs(f.back());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
    bound = 2 * bound + 1;
    int k = 1;
    BigInt pk = best_p;
    while (pk <= bound) {
        pk *= best_p;
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_all(f, best, F, k, pk);

    std::vector<ZPoly> result;
    ZPoly rem = f;
    std::vector<ZPoly> pool = std::move(lifted);
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i)
            idx[i] = i;
        while (true) {
            ZPoly cand{mod_pos(rem.back(), pk)};
            for (std::size_t i : idx)
                cand = mul_mod(cand, pool[i], pk);
            cand = zprimitive(zsymmetric(cand, pk));
            ZPoly q;
            if (zdeg(cand) > 0 && zdivides(rem, cand, q)) {
                result.push_back(cand);
                rem = q;
                for (std::size_t i = s; i-- > 0;)
                    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx[i]));
                found = true;
                break;
            }
            // next combination
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == pool.size() - s + (i - 1))
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!found)
            ++s;
    }
    if (zdeg(rem) > 0)
        result.push_back(zprimitive(rem));
    return result;
}

ZPoly to_primitive_z(const poly::Dense& p)
{
    BigInt den = 1;
    for (const auto& c : p)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        z[i] = p[i].get_num() * (den / p[i].get_den());
    return zprimitive(z);
}

LaurentPoly from_z(const ZPoly& z)
{
    std::vector<Rational> c;
    c.reserve(z.size());
    for (const auto& x : z)
        c.emplace_back(x);
    return normalize(LaurentPoly::from_coeffs(0, std::move(c)));
}

} // namespace

std::vector<FactorTerm> factor(const LaurentPoly& f, int degree_cap)
{
    if (f.is_zero())
        throw std::invalid_argument("factor: zero polynomial");
    LaurentPoly g = normalize(f);
    if (g.span() > degree_cap)
        throw ResourceError("factor: degree " + std::to_string(g.span()) + " exceeds cap " +
                            std::to_string(degree_cap));
    if (g.span() <= 0)
        return {};

    // Yun's squarefree decomposition over Q
    std::map<LaurentPoly, int, std::less<>> acc;
    auto record = [&](const poly::Dense& part, int mult) {
        if (poly::degree(part) < 1)
            return;
        for (const auto& irr : zassenhaus(to_primitive_z(part)))
            acc[from_z(irr)] += mult;
    };
    poly::Dense a = g.dense();
    poly::Dense da = poly::derivative(a);
    poly::Dense a0 = poly::gcd(a, da);
    poly::Dense b = poly::divmod(a, a0).first;
    poly::Dense c = poly::divmod(da, a0).first;
    poly::Dense d = [&] {
        poly::Dense db = poly::derivative(b);
        poly::Dense r = c;
        if (r.size() < db.size())
            r.resize(db.size());
        for (std::size_t i = 0; i < db.size(); ++i)
            r[i] -= db[i];
        poly::trim(r);
        return r;
    }();
    for (int mult = 1; poly::degree(b) > 0; ++mult) {
        poly::Dense ai = poly::gcd(b, d);
        record(ai, mult);
        b = poly::divmod(b, ai).first;
        c = poly::divmod(d, ai).first;
        poly::Dense db = poly::derivative(b);
        d = c;
        if (d.size() < db.size())
            d.resize(db.size());
        for (std::size_t i = 0; i < db.size(); ++i)
            d[i] -= db[i];
        poly::trim(d);
    }

    std::vector<FactorTerm> out;
    for (auto& [p, m] : acc)
        out.push_back({p, m});
    return out;
}

LaurentPoly expand(const std::vector<FactorTerm>& factors)
{
    LaurentPoly prod(1);
    for (const auto& t : factors)
        for (int i = 0; i < t.multiplicity; ++i)
            prod *= t.factor;
    return normalize(prod);
}

} // namespace knotconc
