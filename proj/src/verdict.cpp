#include "knotconc/verdict.hpp"

#include "knotconc/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace knotconc {

std::string to_string(Conclusion c)
{
    switch (c) {
    case Conclusion::NotSlice:
        return "NOT_SLICE";
    case Conclusion::NotSliceConditional:
        return "NOT_SLICE_CONDITIONAL";
    case Conclusion::Inconclusive:
        return "INCONCLUSIVE";
    case Conclusion::SolvableUpperBound:
        return "SOLVABLE_UPPER_BOUND";
    }
    return "?";
}

std::string to_string(HypothesisStatus s)
{
    switch (s) {
    case HypothesisStatus::Certified:
        return "certified";
    case HypothesisStatus::Assumed:
        return "assumed";
    case HypothesisStatus::Failed:
        return "failed";
    }
    return "?";
}

std::string Residual::str() const
{
    std::string s;
    for (const auto& e : excluded)
        s += (s.empty() ? "" : ", ") + e.str();
    return subject.str() + " not in {" + s + "}";
}

bool Verdict::has_failed_hypothesis() const
{
    return std::any_of(hypotheses.begin(), hypotheses.end(),
                       [](const Hypothesis& h) { return h.status == HypothesisStatus::Failed; });
}

bool Verdict::sound() const
{
    if (conclusion != Conclusion::NotSlice)
        return true;
    return std::all_of(hypotheses.begin(), hypotheses.end(),
                       [](const Hypothesis& h) { return h.status == HypothesisStatus::Certified; });
}

std::string Verdict::transcript() const
{
    std::string s = "conclusion: " + to_string(conclusion) + "\n";
    s += "theorem: " + theorem + "\n";
    if (!condition.empty())
        s += "condition: " + condition + "\n";
    if (solvable_bound)
        s += "solvable: " + to_string(Conclusion::SolvableUpperBound) + "(" + solvable_bound->str() + ")\n";
    s += "hypotheses:\n";
    for (const auto& h : hypotheses)
        s += "  [" + to_string(h.status) + "] " + h.text + "\n";
    if (!notes.empty()) {
        s += "notes:\n";
        for (const auto& n : notes)
            s += "  - " + n + "\n";
    }
    return s;
}

void check_soundness(const Verdict& v)
{
    if (!v.sound())
        throw std::logic_error("unsound verdict: NOT_SLICE with a hypothesis that is not certified");
}

namespace {

void add_note(Verdict& v, const std::string& s)
{
    if (std::find(v.notes.begin(), v.notes.end(), s) == v.notes.end())
        v.notes.push_back(s);
}

std::string display_name(const NodePtr& n)
{
    if (n->kind == NodeKind::BaseKnot)
        return n->knot->name;
    return canonical_string(*n);
}

// subject: common atom, preferring atoms without a numeric value, then rho0
std::optional<Residual> residual_for(const std::vector<RhoTerm>& unproven)
{
    std::set<RhoAtom> common = unproven.front().atoms();
    for (const auto& t : unproven) {
        std::set<RhoAtom> keep;
        for (const auto& a : common)
            if (t.coefficient(a) != 0)
                keep.insert(a);
        common = std::move(keep);
    }
    if (common.empty())
        return std::nullopt;
    auto rank = [](const RhoAtom& a) { return std::make_pair(a.value.has_value(), a.kind != RhoAtom::Kind::Rho0); };
    RhoAtom subject = *std::min_element(common.begin(), common.end(), [&](const RhoAtom& a, const RhoAtom& b) {
        if (rank(a) != rank(b))
            return rank(a) < rank(b);
        return a < b;
    });
    std::set<RhoTerm> excluded;
    for (const auto& t : unproven) {
        Rational c = t.coefficient(subject);
        RhoTerm rest = t - c * RhoTerm(subject);
        excluded.insert(Rational(-1 / c) * rest);
    }
    return Residual{subject, {excluded.begin(), excluded.end()}};
}

struct FosAnalysis {
    std::vector<RhoTerm> unproven;
    bool identically_zero = false;
};

// Records the first-order signature hypotheses of K on v.
FosAnalysis analyze_fos(Verdict& v, const NodePtr& knot, const RhoContext& ctx, const Axioms& axioms)
{
    FosAnalysis out;
    FosResult fos = first_order_signatures(knot, ctx);
    const std::string name = display_name(knot);
    v.hypotheses.push_back({"first-order signatures of " + name + " computed over all " +
                                std::to_string(fos.entries.size()) + " isotropic submodules of the module of " +
                                fos.knot,
                            fos.complete ? HypothesisStatus::Certified : HypothesisStatus::Failed});
    for (const auto& n : fos.notes)
        add_note(v, n);
    if (solvability_upper_bound(knot).state == SolvDegree::State::Infinite) {
        // a slice disk kernel is isotropic and its signature vanishes, even when it is not identified
        v.hypotheses.push_back({name + " is not known to be slice (a slice knot has a vanishing first-order signature)",
                                HypothesisStatus::Failed});
        return out;
    }
    for (const auto& e : fos.entries) {
        const std::string what = "FOS[" + e.label + "] = " + e.term.str();
        if (e.term.is_zero()) {
            out.identically_zero = true;
            add_note(v, what + " vanishes identically, so the obstruction says nothing");
            continue;
        }
        NonzeroProof p = prove_nonzero(e.term, axioms);
        if (p.proven)
            v.hypotheses.push_back({what + " is nonzero: " + p.route, HypothesisStatus::Certified});
        else
            out.unproven.push_back(e.term);
    }
    return out;
}

// Shared conclusion logic for the "some first-order signature vanishes" theorems.
void conclude_from_fos(Verdict& v, const FosAnalysis& a)
{
    if (v.has_failed_hypothesis() || a.identically_zero) {
        v.conclusion = Conclusion::Inconclusive;
        return;
    }
    if (a.unproven.empty()) {
        v.conclusion = v.sound_with(Conclusion::NotSlice) ? Conclusion::NotSlice : Conclusion::NotSliceConditional;
        if (v.conclusion == Conclusion::NotSliceConditional)
            v.condition = "the assumed hypotheses hold";
        return;
    }
    v.conclusion = Conclusion::NotSliceConditional;
    v.residual = residual_for(a.unproven);
    if (v.residual) {
        v.condition = v.residual->str();
    } else {
        std::string s;
        for (const auto& t : a.unproven)
            s += (s.empty() ? "" : " and ") + t.str() + " != 0";
        v.condition = s;
    }
}

} // namespace

bool Verdict::sound_with(Conclusion c) const
{
    Verdict copy = *this;
    copy.conclusion = c;
    return copy.sound();
}

Verdict bing_obstruction(const NodePtr& knot, const RhoContext& ctx, const Axioms& axioms)
{
    if (!is_knot(*knot))
        throw InputError("the Bing double obstruction takes a knot, got " + canonical_string(*knot));
    Verdict v;
    v.theorem = kTagBingDouble;
    FosAnalysis a = analyze_fos(v, knot, ctx, axioms);
    conclude_from_fos(v, a);
    if (v.conclusion != Conclusion::Inconclusive)
        add_note(v, "applies to every iterated Bing double BD^n(" + display_name(knot) +
                        "), n >= 1, even for sliceness in a rational homology ball");
    check_soundness(v);
    return v;
}

namespace {

struct AmbientCurve {
    NodePtr ambient;
    CurveSpec curve;
    NodePtr infectant;
};

AmbientCurve split_single_infection(const NodePtr& tree, const char* who)
{
    if (tree->kind == NodeKind::BingDouble) {
        CurveSpec c;
        c.label = "alpha";
        c.depth = DepthCertificate::from_word(bing_curve(tree->count));
        return {trivial_link(1 << tree->count), c, tree->parent};
    }
    if (tree->kind != NodeKind::Infect ||
        (tree->parent->kind != NodeKind::TrivialLink && tree->parent->kind != NodeKind::SliceLinkAssumed))
        throw InputError(std::string(who) + " needs an infection of a trivial or slice link, got " +
                         canonical_string(*tree));
    if (tree->curves.size() != 1)
        throw InputError(std::string(who) + " needs a single infection curve, got " +
                         std::to_string(tree->curves.size()));
    return {tree->parent, tree->curves[0], tree->children[0]};
}

std::string ambient_name(const NodePtr& ambient)
{
    if (ambient->kind == NodeKind::SliceLinkAssumed)
        return "link '" + ambient->label + "'";
    return "trivial " + std::to_string(ambient->components) + "-component link";
}

// Depth n >= 1 of the curve. Words are certified over a trivial link only.
void depth_hypothesis(Verdict& v, const AmbientCurve& ac, bool exact)
{
    const bool trivial = ac.ambient->kind == NodeKind::TrivialLink;
    const CurveSpec& c = ac.curve;
    const std::string curve = "curve '" + c.label + "'";
    if (!c.depth) {
        v.hypotheses.push_back({curve + " has a depth certificate", HypothesisStatus::Failed});
        return;
    }
    const DepthCertificate& d = *c.depth;
    if (d.kind == DepthCertificate::Kind::Word) {
        DepthResult r = derived_depth(*d.word, kMaxDerivedDepth);
        std::string where = trivial ? "F^(" : "pi1(M_T)^(";
        if (r.depth == 0) {
            v.hypotheses.push_back({curve + " = " + d.word->str() + " lies in " + where + "1)", HypothesisStatus::Failed});
            return;
        }
        std::string text;
        if (exact && !r.at_least)
            text = curve + " = " + d.word->str() + " lies in " + where + std::to_string(r.depth) + ") but not in " +
                   where + std::to_string(r.depth + 1) + ")";
        else
            text = curve + " = " + d.word->str() + " lies in " + where + (r.at_least ? ">= " : "") +
                   std::to_string(r.depth) + ")";
        HypothesisStatus st = HypothesisStatus::Certified;
        if (!trivial) {
            st = HypothesisStatus::Assumed;
            text += " (depth in the free group transferred to the slice link complement)";
        } else if (exact && r.at_least) {
            st = HypothesisStatus::Failed;
            text += "; the exact depth is beyond the cap";
        }
        v.hypotheses.push_back({text, st});
        return;
    }
    if (d.depth < 1) {
        v.hypotheses.push_back({curve + " has depth 0", HypothesisStatus::Failed});
        return;
    }
    std::string text = curve + " lies at depth " + std::to_string(d.depth);
    if (exact)
        text += " exactly";
    if (d.kind == DepthCertificate::Kind::Assumed || exact || !trivial) {
        v.hypotheses.push_back({text + (d.kind == DepthCertificate::Kind::Structural ? " (" + d.reason + ")" : ""),
                                HypothesisStatus::Assumed});
        return;
    }
    v.hypotheses.push_back({text + " (" + d.reason + ")", HypothesisStatus::Certified});
}

} // namespace

Verdict infection_obstruction(const NodePtr& tree, const RhoContext& ctx, const Axioms& axioms)
{
    AmbientCurve ac = split_single_infection(tree, "infection_obstruction");
    Verdict v;
    const bool trivial = ac.ambient->kind == NodeKind::TrivialLink;
    v.theorem = trivial ? kTagTrivialLink : kTagSliceLink;
    if (!trivial)
        v.hypotheses.push_back({"link '" + ac.ambient->label + "' is slice", HypothesisStatus::Assumed});
    depth_hypothesis(v, ac, false);
    FosAnalysis a = analyze_fos(v, ac.infectant, ctx, axioms);
    if (trivial) {
        conclude_from_fos(v, a);
    } else if (v.has_failed_hypothesis() || a.identically_zero) {
        v.conclusion = Conclusion::Inconclusive;
    } else {
        v.conclusion = Conclusion::NotSliceConditional;
        v.condition = "min |FOS(" + display_name(ac.infectant) + ")| >= " + RhoAtom::cg("M_" + ac.ambient->label).str();
    }
    if (v.conclusion != Conclusion::Inconclusive)
        add_note(v, "obstructs sliceness of the infected link in a rational homology ball");
    check_soundness(v);
    return v;
}

namespace {

struct Level {
    std::shared_ptr<const KnotRecord> pattern;
    std::vector<CurveSpec> curves;
};

// Peels generalized doubling operators: RDouble, or infection of a base knot
// along classed curves by copies of a single knot.
std::optional<std::pair<Level, NodePtr>> peel(const NodePtr& n)
{
    NodePtr cur = n->kind == NodeKind::RDouble ? desugar(n) : n;
    if (cur->kind != NodeKind::Infect || cur->parent->kind != NodeKind::BaseKnot)
        return std::nullopt;
    const std::string first = canonical_string(*cur->children.front());
    for (std::size_t i = 0; i < cur->curves.size(); ++i)
        if (!cur->curves[i].alex_class || canonical_string(*cur->children[i]) != first)
            return std::nullopt;
    return std::make_pair(Level{cur->parent->knot, cur->curves}, cur->children.front());
}

void blanchfield_hypothesis(Verdict& v, const Level& lv, int j)
{
    const std::string who = "R_" + std::to_string(j) + " = " + lv.pattern->name;
    if (lv.pattern->opaque()) {
        v.hypotheses.push_back({"Blanchfield form of " + who + " is nonzero on the span of its curves (module unknown)",
                                HypothesisStatus::Failed});
        return;
    }
    AlexModule m(*lv.pattern->seifert);
    std::vector<ModElement> xs;
    for (const auto& c : lv.curves)
        xs.push_back(resolve_class(*lv.pattern, m, *c.alex_class));
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < xs.size(); ++b) {
            RationalFunctionModP bl = m.blanchfield(xs[a], xs[b]);
            if (!bl.is_zero()) {
                v.hypotheses.push_back({"Bl(" + lv.curves[a].label + ", " + lv.curves[b].label + ") = " + bl.str() +
                                            " != 0 on the submodule of " + who + " generated by its curves",
                                        HypothesisStatus::Certified});
                return;
            }
        }
    v.hypotheses.push_back({"Blanchfield form of " + who + " is nonzero on the submodule generated by its curves "
                            "(it vanishes there: the curves span an isotropic submodule)",
                            HypothesisStatus::Failed});
}

} // namespace

Verdict doubling_operator_verdict(const NodePtr& tree, const RhoContext& ctx)
{
    Verdict v;
    v.theorem = kTagDoubling;
    NodePtr t = tree;
    while (t->kind == NodeKind::Multiple) {
        add_note(v, "multiple of " + std::to_string(t->count) + " string-link copies: the conclusion covers every "
                    "positive multiple");
        t = t->parent;
    }
    AmbientCurve ac = split_single_infection(t, "doubling_operator_verdict");
    const bool trivial = ac.ambient->kind == NodeKind::TrivialLink;
    v.hypotheses.push_back({ambient_name(ac.ambient) + " is slice",
                            trivial ? HypothesisStatus::Certified : HypothesisStatus::Assumed});

    int k = 0;
    {
        Verdict probe;
        depth_hypothesis(probe, ac, true);
        v.hypotheses.insert(v.hypotheses.end(), probe.hypotheses.begin(), probe.hypotheses.end());
        if (!probe.has_failed_hypothesis()) {
            const auto& d = *ac.curve.depth;
            k = d.kind == DepthCertificate::Kind::Word ? derived_depth(*d.word, kMaxDerivedDepth).depth : d.depth;
        }
    }

    std::vector<Level> levels;
    NodePtr knot = ac.infectant;
    while (auto p = peel(knot)) {
        levels.push_back(p->first);
        knot = p->second;
    }
    const int m = static_cast<int>(levels.size());
    for (int idx = 0; idx < m; ++idx) {
        const Level& lv = levels[static_cast<std::size_t>(idx)];
        const int j = m - idx;
        const std::string who = "R_" + std::to_string(j) + " = " + lv.pattern->name;
        v.hypotheses.push_back({who + " is slice", lv.pattern->flags.slice_like() ? HypothesisStatus::Certified
                                                                                    : HypothesisStatus::Failed});
        blanchfield_hypothesis(v, lv, j);
    }

    const std::string kname = display_name(knot);
    std::optional<int> arf_k;
    if (knot->kind == NodeKind::BaseKnot)
        arf_k = knot->knot->arf_invariant();
    if (arf_k)
        v.hypotheses.push_back({"Arf(" + kname + ") = " + std::to_string(*arf_k),
                                *arf_k == 0 ? HypothesisStatus::Certified : HypothesisStatus::Failed});
    else
        v.hypotheses.push_back({"Arf(" + kname + ") = 0 (unknown)", HypothesisStatus::Failed});

    const int n = k + m;
    SolvDegree bound = solvability_upper_bound(tree);
    v.solvable_bound = bound;
    if (!bound.is_finite() || bound.twice_level != 2 * n)
        add_note(v, "solvability bookkeeping gives " + bound.str() + ", expected " + std::to_string(n));
    add_note(v, "k = " + std::to_string(k) + ", " + std::to_string(m) + " doubling operator(s), n = " +
                    std::to_string(n) + ": the link lies in F_" + std::to_string(n));

    RhoTerm r0 = rho0_term(knot, ctx);
    if (v.has_failed_hypothesis()) {
        v.conclusion = Conclusion::Inconclusive;
    } else if (r0.is_zero()) {
        v.conclusion = Conclusion::Inconclusive;
        add_note(v, "rho0(" + kname + ") = 0, so |rho0| > C never holds");
    } else {
        v.conclusion = Conclusion::NotSliceConditional;
        v.condition = "|" + r0.str() + "| > C";
        add_note(v, "C is independent of " + kname + " (a Cheeger-Gromov constant of the zero surgery on the "
                    "outermost operator); under the condition the link has infinite order and no multiple lies in F_" +
                    std::to_string(n + 1));
    }
    check_soundness(v);
    return v;
}

Verdict verdict_for(const NodePtr& tree, const RhoContext& ctx, const Axioms& axioms)
{
    if (is_knot(*tree))
        return bing_obstruction(tree, ctx, axioms);
    if (tree->kind == NodeKind::Multiple)
        return doubling_operator_verdict(tree, ctx);
    if (tree->kind == NodeKind::BingDouble)
        return tree->parent->kind == NodeKind::RDouble ? doubling_operator_verdict(tree, ctx)
                                                       : infection_obstruction(tree, ctx, axioms);
    if (tree->kind == NodeKind::Infect && tree->curves.size() == 1 &&
        tree->children.front()->kind == NodeKind::RDouble)
        return doubling_operator_verdict(tree, ctx);
    return infection_obstruction(tree, ctx, axioms);
}

} // namespace knotconc
