#pragma once

// Seeded property suites. Each returns how many cases ran and the first
// counterexample, so doctest and the acceptance binary can share them.

#include "oracles.hpp"

#include "knotconc/alexmod.hpp"
#include "knotconc/factor.hpp"
#include "knotconc/freegroup.hpp"
#include "knotconc/seifert.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace props {

using namespace knotconc;

struct Report {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && cases > 0; }
    void fail(const std::string& what)
    {
        if (failures++ == 0)
            first_failure = what;
    }
    std::string str() const
    {
        return std::to_string(cases) + " cases, " + std::to_string(failures) + " failures" +
               (failures ? " (first: " + first_failure + ")" : "");
    }
};

inline std::string show(const IntMatrix& v)
{
    std::string s = "[";
    for (const auto& row : v) {
        s += "[";
        for (std::size_t j = 0; j < row.size(); ++j)
            s += (j ? "," : "") + std::to_string(row[j]);
        s += "]";
    }
    return s + "]";
}

// Delta(t) agrees with Delta(1/t) up to units and Delta(1) = +-1.
inline Report alexander_symmetry(int cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> genus(1, 3);
    Report r;
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const auto v = oracle::random_seifert(rng, genus(rng), 2, i % 2 == 1);
        const auto delta = alexander_poly(SeifertMatrix(v));
        if (!associates(delta, delta.conj()))
            r.fail("asymmetric Delta for " + show(v));
        else if (abs(delta.eval(1)) != 1)
            r.fail("Delta(1) = " + delta.eval(1).get_str() + " for " + show(v));
    }
    return r;
}

// Factoring a product of random polynomials and multiplying back.
inline Report factor_roundtrip(int cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> parts(1, 3);
    Report r;
    for (int i = 0; i < cases; ++i, ++r.cases) {
        LaurentPoly f(1);
        const int k = parts(rng);
        for (int j = 0; j < k; ++j) {
            LaurentPoly g;
            while (g.is_zero())
                g = oracle::random_laurent(rng, 4, 3);
            f *= g;
        }
        const auto fs = factor(f);
        bool irreducible_shape = true;
        for (const auto& t : fs)
            irreducible_shape = irreducible_shape && t.multiplicity >= 1 && t.factor.span() >= 1 &&
                                 normalize(t.factor) == t.factor;
        if (!associates(expand(fs), f) || !irreducible_shape)
            r.fail("factor(" + f.str() + ")");
    }
    return r;
}

// Sesquilinearity, hermitian symmetry, annihilation by the order and
// nonsingularity of the Blanchfield form on random modules and elements.
inline Report blanchfield_properties(int cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> genus(1, 2);
    Report r;
    while (r.cases < cases) {
        const auto v = oracle::random_seifert(rng, genus(rng), 2, true);
        const AlexModule m{SeifertMatrix(v)};
        if (m.is_zero())
            continue;
        const std::size_t n = v.size();
        auto vec = [&] {
            std::vector<LaurentPoly> x(n);
            for (auto& c : x)
                c = oracle::random_laurent(rng, 2, 2);
            return x;
        };
        const LaurentPoly delta = m.order();
        for (int rep = 0; rep < 10 && r.cases < cases; ++rep, ++r.cases) {
            const auto x = m.from_presentation(vec());
            const auto y = m.from_presentation(vec());
            const auto z = m.from_presentation(vec());
            const auto f = oracle::random_laurent(rng, 2, 3);
            const auto bxy = m.blanchfield(x, y);
            const std::string where = " on " + show(v);
            if (m.blanchfield(m.add(x, z), y) != bxy + m.blanchfield(z, y))
                r.fail("additivity" + where);
            else if (m.blanchfield(m.scale(f, x), y) != bxy * f)
                r.fail("linearity in the first slot" + where);
            else if (m.blanchfield(x, m.scale(f, y)) != bxy * f.conj())
                r.fail("conjugate linearity in the second slot" + where);
            else if (m.blanchfield(y, x) != bxy.conj())
                r.fail("hermitian symmetry" + where);
            else if (!(bxy * delta).is_zero())
                r.fail("annihilation by Delta" + where);
            else if (!m.is_zero(x)) {
                bool pairs = false;
                for (std::size_t j = 0; j < m.rank() && !pairs; ++j)
                    pairs = !m.blanchfield(x, m.basis(j)).is_zero();
                if (!pairs)
                    r.fail("degenerate element" + where);
            } else if (!bxy.is_zero()) {
                r.fail("zero element pairs nontrivially" + where);
            }
        }
    }
    return r;
}

// Random words of bounded depth: products and commutators of short words.
inline FreeWord random_deep_word(std::mt19937_64& rng, int rank, int depth)
{
    if (depth == 0)
        return oracle::random_word(rng, rank, 1 + static_cast<int>(rng() % 3));
    return commutator(random_deep_word(rng, rank, depth - 1), random_deep_word(rng, rank, depth - 1));
}

// depth(g w g^-1) = depth(w) and depth([u, v]) >= min(depth u, depth v) + 1.
inline Report derived_series_properties(int cases, std::uint64_t seed, int n_max = 3)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rank(2, 3), d(0, 2);
    Report r;
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const int m = rank(rng);
        const auto w = random_deep_word(rng, m, d(rng));
        const auto g = oracle::random_word(rng, m, 3);
        const auto dw = derived_depth(w, n_max);
        const auto dc = derived_depth(g * w * g.inverse(), n_max);
        if (!(dw == dc))
            r.fail("conjugation changed the depth of " + w.str());
        const auto u = random_deep_word(rng, m, d(rng));
        const auto v = random_deep_word(rng, m, d(rng));
        const auto du = derived_depth(u, n_max), dv = derived_depth(v, n_max);
        const auto duv = derived_depth(commutator(u, v), n_max);
        const int bound = std::min(std::min(du.depth, dv.depth) + 1, n_max);
        if (duv.depth < bound)
            r.fail("[" + u.str() + ", " + v.str() + "] has depth " + duv.str());
    }
    return r;
}

// rho0 of a block sum lies in the sum of the enclosures; Arf adds mod 2.
inline Report connected_sum_properties(int cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const Rational tol(1, 1000000);
    Report r;
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const SeifertMatrix a(oracle::random_seifert(rng, 1, 3, false));
        const SeifertMatrix b(oracle::random_seifert(rng, 1 + i % 2, 2, false));
        const auto s = connected_sum(a, b);
        const auto sum = rho0(a, tol) + rho0(b, tol);
        const auto direct = rho0(s, tol);
        if (abs(sum.mid - direct.mid) > sum.radius + direct.radius)
            r.fail("rho0 additivity for " + show(a.entries()) + " # " + show(b.entries()));
        else if (arf(s) != (arf(a) ^ arf(b)))
            r.fail("Arf additivity for " + show(a.entries()) + " # " + show(b.entries()));
    }
    return r;
}

// The exact signature function against floating eigenvalues at random
// points away from the jumps.
inline Report signature_sampling(int cases, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Report r;
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const auto v = oracle::random_seifert(rng, 1 + i % 2, 2, i % 3 == 0);
        const auto sig = signature_function(SeifertMatrix(v));
        for (int k = 0; k < 5; ++k) {
            const double u = u01(rng);
            bool near_jump = false;
            for (const auto& j : sig.jumps)
                near_jump = near_jump || std::abs(j.turns() - u) < 1e-6;
            if (near_jump)
                continue;
            if (sig.sample(u) != oracle::float_signature(v, u)) {
                r.fail("signature at " + std::to_string(u) + " of " + show(v));
                break;
            }
        }
    }
    return r;
}

} // namespace props
