#include "knotconc/alexmod.hpp"

#include "knotconc/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace knotconc {

namespace {

LaurentMatrix identity(std::size_t n)
{
    LaurentMatrix m(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = LaurentPoly(1);
    return m;
}

LaurentPoly unit_inverse(const LaurentPoly& u) { return exact_div(LaurentPoly(1), u); }

void swap_columns(LaurentMatrix& m, std::size_t a, std::size_t b)
{
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

LaurentMatrix minor_of(const LaurentMatrix& a, std::size_t r, std::size_t c)
{
    LaurentMatrix m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == r)
            continue;
        std::vector<LaurentPoly> row;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (j != c)
                row.push_back(a[i][j]);
        m.push_back(std::move(row));
    }
    return m;
}

} // namespace

SmithForm smith_form(LaurentMatrix a)
{
    const std::size_t n = a.size();
    SmithForm out{{}, identity(n), identity(n)};
    auto& w = out.w;
    auto& winv = out.w_inv;

    // col_j -= q col_k, mirrored on W and W^-1
    auto col_sub = [&](std::size_t j, std::size_t k, const LaurentPoly& q) {
        for (std::size_t i = 0; i < n; ++i) {
            a[i][j] -= q * a[i][k];
            w[i][j] -= q * w[i][k];
        }
        for (std::size_t i = 0; i < n; ++i)
            winv[k][i] += q * winv[j][i];
    };

    for (std::size_t k = 0; k < n; ++k) {
        while (true) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (!a[i][j].is_zero() && (pi == n || a[i][j].span() < a[pi][pj].span())) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n)
                throw std::invalid_argument("smith_form: singular matrix");
            std::swap(a[k], a[pi]);
            if (pj != k) {
                swap_columns(a, k, pj);
                swap_columns(w, k, pj);
                std::swap(winv[k], winv[pj]);
            }
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (a[i][k].is_zero())
                    continue;
                auto [q, r] = divmod(a[i][k], a[k][k]);
                for (std::size_t j = k; j < n; ++j)
                    a[i][j] -= q * a[k][j];
                if (!r.is_zero())
                    clean = false;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (a[k][j].is_zero())
                    continue;
                auto [q, r] = divmod(a[k][j], a[k][k]);
                col_sub(j, k, q);
                if (!r.is_zero())
                    clean = false;
            }
            if (!clean)
                continue;
            std::size_t bad = n;
            for (std::size_t i = k + 1; i < n && bad == n; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (!divides(a[k][k], a[i][j])) {
                        bad = i;
                        break;
                    }
            if (bad == n)
                break;
            for (std::size_t j = k; j < n; ++j)
                a[k][j] += a[bad][j];
        }
        LaurentPoly u = exact_div(normalize(a[k][k]), a[k][k]);
        LaurentPoly ui = unit_inverse(u);
        for (std::size_t i = 0; i < n; ++i) {
            a[i][k] *= u;
            w[i][k] *= u;
            winv[k][i] *= ui;
        }
        out.diagonal.push_back(a[k][k]);
    }
    return out;
}

// ------------------------------------------------------------ AlexModule

AlexModule::AlexModule(const SeifertMatrix& v) : v_(v), a_(alexander_presentation(v))
{
    const std::size_t n = a_.size();
    det_ = determinant(a_);
    adj_.assign(n, std::vector<LaurentPoly>(n));
    if (n == 1)
        adj_[0][0] = LaurentPoly(1);
    else
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                LaurentPoly c = determinant(minor_of(a_, j, i));
                adj_[i][j] = (i + j) % 2 ? -c : c;
            }
    snf_ = smith_form(a_);
    for (std::size_t k = 0; k < n; ++k)
        if (!snf_.diagonal[k].is_unit()) {
            orders_.push_back(snf_.diagonal[k]);
            slots_.push_back(k);
        }
}

LaurentPoly AlexModule::order() const
{
    LaurentPoly p(1);
    for (const auto& d : orders_)
        p *= d;
    return normalize(p);
}

ModElement AlexModule::basis(std::size_t i) const
{
    ModElement y = zero();
    y.at(i) = LaurentPoly(1);
    return reduce(std::move(y));
}

ModElement AlexModule::reduce(ModElement y) const
{
    if (y.size() != rank())
        throw InputError("module element has " + std::to_string(y.size()) + " coordinates, expected " +
                         std::to_string(rank()));
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = reduce_mod(y[i], orders_[i]);
    return y;
}

ModElement AlexModule::add(const ModElement& a, const ModElement& b) const
{
    ModElement s(rank());
    for (std::size_t i = 0; i < rank(); ++i)
        s[i] = a.at(i) + b.at(i);
    return reduce(std::move(s));
}

ModElement AlexModule::scale(const LaurentPoly& f, const ModElement& y) const
{
    ModElement s(y);
    for (auto& c : s)
        c *= f;
    return reduce(std::move(s));
}

bool AlexModule::is_zero(const ModElement& y) const
{
    ModElement r = reduce(y);
    return std::all_of(r.begin(), r.end(), [](const LaurentPoly& c) { return c.is_zero(); });
}

ModElement AlexModule::from_presentation(const std::vector<LaurentPoly>& x) const
{
    const std::size_t n = a_.size();
    if (x.size() != n)
        throw InputError("presentation vector has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(n));
    ModElement y(rank());
    for (std::size_t k = 0; k < rank(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            y[k] += x[i] * snf_.w[i][slots_[k]];
    return reduce(std::move(y));
}

std::vector<LaurentPoly> AlexModule::to_presentation(const ModElement& y) const
{
    const std::size_t n = a_.size();
    std::vector<LaurentPoly> x(n);
    for (std::size_t k = 0; k < rank(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            x[i] += y.at(k) * snf_.w_inv[slots_[k]][i];
    return x;
}

std::vector<PrimarySummand> AlexModule::primary_decomposition() const
{
    std::vector<PrimarySummand> out;
    for (std::size_t k = 0; k < rank(); ++k)
        for (const auto& [p, e] : factor(orders_[k])) {
            LaurentPoly pe(1);
            for (int i = 0; i < e; ++i)
                pe *= p;
            out.push_back({p, e, scale(exact_div(orders_[k], pe), basis(k))});
        }
    return out;
}

RationalFunctionModP AlexModule::blanchfield_presentation(const std::vector<LaurentPoly>& x,
                                                          const std::vector<LaurentPoly>& y) const
{
    const std::size_t n = a_.size();
    if (x.size() != n || y.size() != n)
        throw InputError("presentation vector of the wrong length");
    if (n == 0)
        return {};
    LaurentPoly num;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero())
            continue;
        LaurentPoly row;
        for (std::size_t j = 0; j < n; ++j)
            if (!y[j].is_zero())
                row += adj_[i][j] * y[j].conj();
        num += x[i] * row;
    }
    num *= LaurentPoly(1) - LaurentPoly::t();
    return {num, det_};
}

RationalFunctionModP AlexModule::blanchfield(const ModElement& x, const ModElement& y) const
{
    return blanchfield_presentation(to_presentation(reduce(x)), to_presentation(reduce(y)));
}

BlanchfieldForm blanchfield_form(const AlexModule& m)
{
    BlanchfieldForm f;
    f.gram.assign(m.rank(), std::vector<RationalFunctionModP>(m.rank()));
    for (std::size_t i = 0; i < m.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j)
            f.gram[i][j] = m.blanchfield(m.basis(i), m.basis(j));
    return f;
}

// ------------------------------------------------------------ Submodule

Submodule::Submodule(const AlexModule& m, std::vector<ModElement> generators)
{
    const std::size_t k = m.rank();
    const auto& d = m.invariant_factors();
    for (auto& g : generators)
        gens_.push_back(m.reduce(std::move(g)));

    std::vector<ModElement> rows = gens_;
    for (std::size_t i = 0; i < k; ++i) {
        ModElement r(k);
        r[i] = d[i];
        rows.push_back(std::move(r));
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<ModElement> rest;
        std::optional<ModElement> piv;
        for (auto& r : rows) {
            if (r[col].is_zero()) {
                rest.push_back(std::move(r));
                continue;
            }
            if (!piv) {
                piv = std::move(r);
                continue;
            }
            // [[s, u], [-b, a]] is unimodular and clears r[col]
            Bezout bz = extended_gcd((*piv)[col], r[col]);
            LaurentPoly a = exact_div((*piv)[col], bz.g), b = exact_div(r[col], bz.g);
            ModElement np(k), nr(k);
            for (std::size_t j = col; j < k; ++j) {
                np[j] = bz.s * (*piv)[j] + bz.u * r[j];
                nr[j] = a * r[j] - b * (*piv)[j];
            }
            piv = std::move(np);
            rest.push_back(std::move(nr));
        }
        // keep entries right of the pivot small using the relations d_j e_j
        for (auto& r : rest)
            for (std::size_t j = col + 1; j < k; ++j)
                r[j] = reduce_mod(r[j], d[j]);
        LaurentPoly u = exact_div(normalize((*piv)[col]), (*piv)[col]);
        for (std::size_t j = col; j < k; ++j)
            (*piv)[j] *= u;
        for (std::size_t j = col + 1; j < k; ++j)
            (*piv)[j] = reduce_mod((*piv)[j], d[j]);
        hnf_.push_back(std::move(*piv));
        rows = std::move(rest);
    }
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t r = 0; r < j; ++r) {
            const LaurentPoly& h = hnf_[j][j];
            LaurentPoly q = exact_div(hnf_[r][j] - reduce_mod(hnf_[r][j], h), h);
            if (q.is_zero())
                continue;
            for (std::size_t c = j; c < k; ++c)
                hnf_[r][c] -= q * hnf_[j][c];
        }
    dim_ = 0;
    for (std::size_t i = 0; i < k; ++i)
        dim_ += d[i].span() - hnf_[i][i].span();
}

bool Submodule::contains(const ModElement& x) const
{
    if (x.size() != hnf_.size())
        throw InputError("module element of the wrong length");
    ModElement r = x;
    for (std::size_t i = 0; i < hnf_.size(); ++i) {
        if (r[i].is_zero())
            continue;
        if (!divides(hnf_[i][i], r[i]))
            return false;
        LaurentPoly q = exact_div(r[i], hnf_[i][i]);
        for (std::size_t j = i; j < hnf_.size(); ++j)
            r[j] -= q * hnf_[i][j];
    }
    return true;
}

std::optional<LaurentPoly> Submodule::cyclic_divisor() const
{
    if (hnf_.empty())
        return LaurentPoly(1);
    if (hnf_.size() == 1)
        return hnf_[0][0];
    return std::nullopt;
}

std::vector<LaurentPoly> divisors(const LaurentPoly& f)
{
    std::vector<LaurentPoly> out{LaurentPoly(1)};
    for (const auto& [p, e] : factor(f)) {
        std::vector<LaurentPoly> next;
        for (const auto& d : out) {
            LaurentPoly acc = d;
            for (int i = 0; i <= e; ++i) {
                next.push_back(normalize(acc));
                acc *= p;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Submodule> isotropic_submodules(const AlexModule& m)
{
    if (m.is_zero())
        return {Submodule(m, {})};
    if (!m.is_cyclic())
        throw UnsupportedError("isotropic submodules: module has " + std::to_string(m.rank()) +
                               " invariant factors; only cyclic modules are supported");
    std::vector<Submodule> out;
    for (const auto& f : divisors(m.invariant_factors()[0])) {
        ModElement g = m.scale(f, m.basis(0));
        if (m.blanchfield(g, g).is_zero())
            out.emplace_back(m, std::vector<ModElement>{g});
    }
    std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
        if (a.dimension() != b.dimension())
            return a.dimension() < b.dimension();
        return *a.cyclic_divisor() < *b.cyclic_divisor();
    });
    return out;
}

} // namespace knotconc
