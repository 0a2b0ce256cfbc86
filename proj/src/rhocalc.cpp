#include "knotconc/rhocalc.hpp"

#include "knotconc/errors.hpp"
#include "knotconc/factor.hpp"

#include <algorithm>

namespace knotconc {

RhoAtom RhoAtom::rho0(std::string knot, std::optional<CertifiedReal> value)
{
    return {Kind::Rho0, std::move(knot), {}, std::move(value)};
}

RhoAtom RhoAtom::rho1(std::string knot, std::string submodule)
{
    return {Kind::Rho1, std::move(knot), std::move(submodule), std::nullopt};
}

RhoAtom RhoAtom::cg(std::string manifold) { return {Kind::CG, std::move(manifold), {}, std::nullopt}; }

std::string RhoAtom::str() const
{
    switch (kind) {
    case Kind::Rho0:
        return "rho0(" + label + ")";
    case Kind::Rho1:
        if (qualifier.empty() || qualifier == "0")
            return "rho1(" + label + ")";
        return "rho1(" + label + "; " + qualifier + ")";
    case Kind::CG:
        return "C(" + label + ")";
    }
    return "?";
}

// ------------------------------------------------------------ terms

Rational RhoTerm::coefficient(const RhoAtom& a) const
{
    auto it = coeffs_.find(a);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

std::set<RhoAtom> RhoTerm::atoms() const
{
    std::set<RhoAtom> s;
    for (const auto& [a, c] : coeffs_)
        s.insert(a);
    return s;
}

void RhoTerm::add(const RhoAtom& a, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, fresh] = coeffs_.emplace(a, c);
    if (fresh)
        return;
    it->second += c;
    if (!it->first.value && a.value) {
        // keep the valued copy of the atom
        Rational keep = it->second;
        coeffs_.erase(it);
        if (keep != 0)
            coeffs_.emplace(a, keep);
        return;
    }
    if (it->second == 0)
        coeffs_.erase(it);
}

RhoTerm& RhoTerm::operator+=(const RhoTerm& o)
{
    for (const auto& [a, c] : o.coeffs_)
        add(a, c);
    constant_ += o.constant_;
    return *this;
}

RhoTerm& RhoTerm::operator-=(const RhoTerm& o) { return *this += Rational(-1) * o; }

RhoTerm operator*(const Rational& c, const RhoTerm& t)
{
    RhoTerm r;
    if (c == 0)
        return r;
    for (const auto& [a, x] : t.coeffs_)
        r.coeffs_.emplace(a, c * x);
    r.constant_ = c * t.constant_;
    return r;
}

RhoTerm RhoTerm::substitute(const RhoAtom& a, const RhoTerm& t) const
{
    auto it = coeffs_.find(a);
    if (it == coeffs_.end())
        return *this;
    RhoTerm r = *this;
    Rational c = it->second;
    r.coeffs_.erase(a);
    return r += c * t;
}

std::optional<CertifiedReal> RhoTerm::evaluate() const
{
    CertifiedReal v{constant_, 0};
    for (const auto& [a, c] : coeffs_) {
        if (!a.value)
            return std::nullopt;
        v = v + c * *a.value;
    }
    return v;
}

std::string RhoTerm::str() const
{
    std::string s;
    for (const auto& [a, c] : coeffs_) {
        Rational m = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (m != 1)
            s += to_string(m) + " ";
        s += a.str();
    }
    if (constant_ != 0 || s.empty()) {
        if (s.empty())
            return to_string(constant_);
        s += constant_ < 0 ? " - " : " + ";
        s += to_string(Rational(abs(constant_)));
    }
    return s;
}

bool operator==(const RhoTerm& a, const RhoTerm& b)
{
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
}

bool operator<(const RhoTerm& a, const RhoTerm& b)
{
    if (a.coeffs_ != b.coeffs_)
        return a.coeffs_ < b.coeffs_;
    return a.constant_ < b.constant_;
}

// ------------------------------------------------------------ axioms

std::optional<std::size_t> Axioms::covering_set(const std::set<std::string>& names) const
{
    for (std::size_t i = 0; i < independent.size(); ++i)
        if (std::includes(independent[i].begin(), independent[i].end(), names.begin(), names.end()))
            return i;
    return std::nullopt;
}

namespace {

std::string join_names(const std::set<std::string>& names)
{
    std::string s;
    for (const auto& n : names)
        s += (s.empty() ? "" : ", ") + n;
    return "{" + s + "}";
}

} // namespace

NonzeroProof prove_nonzero(const RhoTerm& t, const Axioms& axioms)
{
    if (t.is_zero())
        return {};
    if (t.is_constant())
        return {true, "nonzero constant " + to_string(t.constant())};
    if (auto v = t.evaluate(); v && v->excludes_zero())
        return {true, "certified interval [" + to_decimal(v->lo(), 12) + ", " + to_decimal(v->hi(), 12) +
                          "] excludes 0"};
    std::set<std::string> names;
    for (const auto& a : t.atoms())
        names.insert(a.str());
    if (t.constant() != 0)
        names.insert("1");
    if (auto i = axioms.covering_set(names))
        return {true, "nonzero combination of independent atoms " + join_names(axioms.independent[*i])};
    return {};
}

bool linearly_independent(const std::vector<RhoTerm>& terms, const Axioms& axioms)
{
    std::set<RhoAtom> atoms;
    bool constants = false;
    for (const auto& t : terms) {
        for (const auto& a : t.atoms())
            atoms.insert(a);
        constants = constants || t.constant() != 0;
    }
    if (!atoms.empty()) {
        std::set<std::string> names;
        for (const auto& a : atoms)
            names.insert(a.str());
        if (constants)
            names.insert("1");
        if (!axioms.covering_set(names))
            return false;
    }
    // rows = terms, columns = atoms then the constant
    std::vector<std::vector<Rational>> rows;
    for (const auto& t : terms) {
        std::vector<Rational> r;
        for (const auto& a : atoms)
            r.push_back(t.coefficient(a));
        r.push_back(t.constant());
        rows.push_back(std::move(r));
    }
    const std::size_t cols = atoms.size() + 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0)
                continue;
            Rational f = rows[i][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank == terms.size();
}

// ------------------------------------------------------------ kernels

int eval_kernel(const Submodule& p, const ModElement& cls) { return p.contains(cls) ? 0 : 1; }

int eval_kernel(const KnotRecord& knot, const AlexModule& m, const Submodule& p, const CurveSpec& curve)
{
    if (!curve.alex_class)
        throw InputError("curve '" + curve.label + "' has no module class; supply its image in the Alexander module of '" +
                         knot.name + "' as \"class\"");
    return eval_kernel(p, resolve_class(knot, m, *curve.alex_class));
}

RhoTerm rho_additivity(const RhoTerm& base, const std::vector<std::pair<int, RhoTerm>>& contributions)
{
    RhoTerm r = base;
    for (const auto& [bit, t] : contributions)
        if (bit)
            r += t;
    return r;
}

// ------------------------------------------------------------ simplification

const KnotRecord* RhoContext::find(const std::string& name) const
{
    auto it = knots.find(name);
    return it == knots.end() ? nullptr : it->second.get();
}

bool all_fos_zero(const KnotRecord& k, std::vector<std::string>* why)
{
    if (!k.flags.slice_like() || !k.flags.fully_amphichiral || !k.seifert)
        return false;
    AlexModule m(*k.seifert);
    if (!m.is_cyclic() || m.is_zero())
        return false;
    auto f = factor(m.order());
    if (f.size() != 2 || f[0].multiplicity != 1 || f[1].multiplicity != 1)
        return false;
    if (associates(f[0].factor, f[1].factor) || !associates(f[0].factor.conj(), f[1].factor))
        return false;
    if (why) {
        why->push_back("all first-order signatures of " + k.name + " vanish: " + k.name +
                       " is ribbon and fully amphichiral with cyclic module of order (" + f[0].factor.str() + ")(" +
                       f[1].factor.str() + "), the factors are swapped by conjugation, so one nonzero isotropic "
                       "submodule is a disk kernel, the symmetry carries it to the other, and it fixes the zero "
                       "submodule");
    }
    return true;
}

namespace {

std::optional<RhoTerm> rewrite(const RhoAtom& a, const RhoContext& ctx, std::vector<std::string>* notes)
{
    const KnotRecord* k = ctx.find(a.label);
    if (!k)
        return std::nullopt;
    auto note = [&](const std::string& s) {
        if (notes && std::find(notes->begin(), notes->end(), s) == notes->end())
            notes->push_back(s);
    };
    if (a.kind == RhoAtom::Kind::Rho0) {
        if (k->flags.slice_like()) {
            note(a.str() + " = 0 since " + k->name + " is slice");
            return RhoTerm();
        }
        return std::nullopt;
    }
    if (a.kind != RhoAtom::Kind::Rho1)
        return std::nullopt;
    const bool zero_p = a.qualifier.empty() || a.qualifier == "0";
    if (zero_p && k->seifert && alexander_poly(*k->seifert).is_unit()) {
        note(a.str() + " = rho0(" + k->name + ") = 0 since the Alexander module of " + k->name + " is zero");
        return RhoTerm();
    }
    if (zero_p && k->flags.amphichiral) {
        note(a.str() + " = 0 since " + k->name + " is amphichiral");
        return RhoTerm();
    }
    if (k->flags.slice_like())
        for (const auto& dk : k->disk_kernels)
            if (a.qualifier == "<" + dk + ">") {
                note(a.str() + " = 0 since " + a.qualifier + " is the kernel of a slice disk for " + k->name);
                return RhoTerm();
            }
    std::vector<std::string> why;
    if (all_fos_zero(*k, &why)) {
        for (const auto& w : why)
            note(w);
        return RhoTerm();
    }
    return std::nullopt;
}

} // namespace

RhoTerm simplify(const RhoTerm& t, const RhoContext& ctx, std::vector<std::string>* notes)
{
    RhoTerm cur = t;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& a : cur.atoms()) {
            if (auto r = rewrite(a, ctx, notes)) {
                cur = cur.substitute(a, *r);
                changed = true;
                break;
            }
        }
    }
    return cur;
}

// ------------------------------------------------------------ first-order signatures

RhoTerm rho0_term(const NodePtr& n, const RhoContext& ctx)
{
    switch (n->kind) {
    case NodeKind::BaseKnot: {
        const KnotRecord& k = *n->knot;
        if (k.flags.slice_like())
            return RhoTerm();
        if (!k.seifert)
            return RhoAtom::rho0(k.name);
        CertifiedReal v = rho0(*k.seifert, ctx.tol);
        if (v.exact())
            return v.mid;
        return RhoAtom::rho0(k.name, v);
    }
    case NodeKind::Infect:
        if (!is_knot(*n))
            break;
        // the Seifert form is unchanged by infection along lk-zero curves
        return rho0_term(n->parent, ctx);
    case NodeKind::RDouble:
        return rho0_term(base_knot(nine46()), ctx);
    case NodeKind::ConnectedSum: {
        RhoTerm s;
        for (const auto& c : n->children)
            s += rho0_term(c, ctx);
        return s;
    }
    case NodeKind::Multiple:
        if (!is_knot(*n))
            break;
        return Rational(n->count) * rho0_term(n->parent, ctx);
    default:
        break;
    }
    throw InputError("rho0 is defined for knots, not for " + canonical_string(*n));
}

std::vector<RhoTerm> FosResult::terms() const
{
    std::vector<RhoTerm> t;
    for (const auto& e : entries)
        t.push_back(e.term);
    return t;
}

FosResult first_order_signatures(const NodePtr& knot, const RhoContext& base_ctx)
{
    if (!is_knot(*knot))
        throw InputError("first-order signatures are defined for knots, not for " + canonical_string(*knot));
    std::vector<std::pair<CurveSpec, NodePtr>> infections;
    NodePtr cur = knot;
    for (;;) {
        if (cur->kind == NodeKind::RDouble)
            cur = desugar(cur);
        if (cur->kind == NodeKind::Infect) {
            if (!is_knot(*cur->parent))
                throw InputError("first-order signatures need a knot pattern");
            for (std::size_t i = 0; i < cur->curves.size(); ++i)
                infections.emplace_back(cur->curves[i], cur->children[i]);
            cur = cur->parent;
            continue;
        }
        if (cur->kind == NodeKind::BaseKnot)
            break;
        throw UnsupportedError("first-order signatures need a base knot or an infection of one, got " +
                               canonical_string(*cur));
    }
    const KnotRecord& rec = *cur->knot;
    RhoContext ctx = base_ctx;
    ctx.add(cur->knot);

    FosResult out;
    out.knot = rec.name;
    auto note = [&](const std::string& s) {
        if (std::find(out.notes.begin(), out.notes.end(), s) == out.notes.end())
            out.notes.push_back(s);
    };

    // curves deeper than the metabelian quotient do not contribute
    std::vector<std::pair<const CurveSpec*, RhoTerm>> live;
    for (const auto& [curve, inf] : infections) {
        if (!curve.alex_class) {
            auto d = certified_depth(curve);
            if (d && *d >= 2) {
                note("curve '" + curve.label + "' lies at depth " + std::to_string(*d) +
                     " >= 2, so it maps trivially to every metabelian quotient and is dropped");
                continue;
            }
        }
        live.emplace_back(&curve, rho0_term(inf, ctx));
    }

    if (rec.opaque()) {
        out.complete = false;
        note("the Alexander module of " + rec.name + " is unknown; only the zero submodule is listed");
        if (!live.empty())
            throw UnsupportedError("curve '" + live.front().first->label + "' on opaque knot '" + rec.name +
                                   "' needs depth >= 2 or a Seifert matrix for its base");
        std::vector<std::string> rules;
        RhoTerm t = simplify(RhoAtom::rho1(rec.name), ctx, &rules);
        for (const auto& r : rules)
            note(r);
        out.entries.push_back({"0", 0, t});
        return out;
    }

    AlexModule m(*rec.seifert);
    for (const auto& p : isotropic_submodules(m)) {
        FosEntry e;
        e.label = submodule_label(rec, m, p);
        e.dimension = p.dimension();
        std::vector<std::pair<int, RhoTerm>> contributions;
        for (const auto& [curve, r0] : live)
            contributions.emplace_back(eval_kernel(rec, m, p, *curve), r0);
        std::vector<std::string> rules;
        e.term = simplify(rho_additivity(RhoAtom::rho1(rec.name, e.label), contributions), ctx, &rules);
        for (const auto& r : rules)
            note(r);
        out.entries.push_back(std::move(e));
    }
    return out;
}

} // namespace knotconc
