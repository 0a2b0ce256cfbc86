#include "knotconc/infection.hpp"

#include "knotconc/errors.hpp"

#include <algorithm>

namespace knotconc {

std::optional<int> KnotRecord::arf_invariant() const
{
    if (seifert)
        return knotconc::arf(*seifert);
    return arf;
}

ModElement resolve_class(const KnotRecord& knot, const AlexModule& m, const AlexClass& c)
{
    switch (c.kind) {
    case AlexClass::Kind::Presentation:
        return m.from_presentation(c.coords);
    case AlexClass::Kind::Decomposition:
        return m.reduce(c.coords);
    case AlexClass::Kind::Named: {
        auto it = knot.classes.find(c.name);
        if (it == knot.classes.end())
            throw InputError("knot '" + knot.name + "' has no class named '" + c.name + "'");
        if (it->second.kind == AlexClass::Kind::Named)
            throw InputError("class '" + c.name + "' of knot '" + knot.name + "' refers to another name");
        return resolve_class(knot, m, it->second);
    }
    }
    throw InputError("unknown class kind");
}

std::string submodule_label(const KnotRecord& knot, const AlexModule& m, const Submodule& p)
{
    if (p.is_zero())
        return "0";
    for (const auto& [name, cls] : knot.classes)
        if (Submodule(m, {resolve_class(knot, m, cls)}) == p)
            return "<" + name + ">";
    if (auto f = p.cyclic_divisor())
        return "<" + f->str() + ">";
    std::string s;
    for (const auto& g : p.generators()) {
        if (!s.empty())
            s += ", ";
        s += "(";
        for (std::size_t i = 0; i < g.size(); ++i)
            s += (i ? ", " : "") + g[i].str();
        s += ")";
    }
    return "<" + s + ">";
}

DepthCertificate DepthCertificate::from_word(FreeWord w)
{
    DepthCertificate c;
    c.kind = Kind::Word;
    c.word = std::move(w);
    return c;
}

DepthCertificate DepthCertificate::assumed(int k)
{
    if (k < 0)
        throw InputError("assumed depth must be nonnegative");
    DepthCertificate c;
    c.kind = Kind::Assumed;
    c.depth = k;
    return c;
}

DepthCertificate DepthCertificate::structural(int k, std::string why)
{
    DepthCertificate c;
    c.kind = Kind::Structural;
    c.depth = k;
    c.reason = std::move(why);
    return c;
}

// ------------------------------------------------------------ nodes

int components(const Node& n)
{
    switch (n.kind) {
    case NodeKind::BaseKnot:
    case NodeKind::RDouble:
    case NodeKind::ConnectedSum:
        return 1;
    case NodeKind::TrivialLink:
    case NodeKind::SliceLinkAssumed:
        return n.components;
    case NodeKind::Infect:
    case NodeKind::Multiple:
        return components(*n.parent);
    case NodeKind::BingDouble:
        return 1 << n.count;
    }
    return 1;
}

bool is_knot(const Node& n) { return components(n) == 1; }

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw InputError(msg);
}

} // namespace

NodePtr base_knot(std::shared_ptr<const KnotRecord> knot)
{
    require(knot != nullptr, "base knot without a record");
    Node n;
    n.kind = NodeKind::BaseKnot;
    n.knot = std::move(knot);
    return make(std::move(n));
}

NodePtr trivial_link(int m)
{
    require(m >= 1, "trivial link needs at least one component");
    Node n;
    n.kind = NodeKind::TrivialLink;
    n.components = m;
    return make(std::move(n));
}

NodePtr slice_link(std::string label, int m)
{
    require(m >= 1, "slice link needs at least one component");
    require(!label.empty(), "slice link needs a label");
    Node n;
    n.kind = NodeKind::SliceLinkAssumed;
    n.label = std::move(label);
    n.components = m;
    return make(std::move(n));
}

NodePtr infect(NodePtr parent, std::vector<CurveSpec> curves, std::vector<NodePtr> infectants)
{
    require(parent != nullptr, "infection without a parent");
    require(!curves.empty(), "infection needs at least one curve");
    require(curves.size() == infectants.size(), "infection has " + std::to_string(curves.size()) + " curves but " +
                                                     std::to_string(infectants.size()) + " infecting knots");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        std::string name = c.label.empty() ? "#" + std::to_string(i + 1) : "'" + c.label + "'";
        require(c.lk_zero, "curve " + name + " must have linking number zero with the link");
        require(infectants[i] != nullptr && is_knot(*infectants[i]), "infectant for curve " + name + " is not a knot");
        if (c.depth && c.depth->kind == DepthCertificate::Kind::Word && parent->kind == NodeKind::TrivialLink)
            require(c.depth->word->rank() == parent->components,
                    "curve " + name + " is a word of rank " + std::to_string(c.depth->word->rank()) +
                        " but the trivial link has " + std::to_string(parent->components) + " components");
    }
    Node n;
    n.kind = NodeKind::Infect;
    n.parent = std::move(parent);
    n.curves = std::move(curves);
    n.children = std::move(infectants);
    return make(std::move(n));
}

NodePtr bing_double(NodePtr knot, int iterations)
{
    require(knot != nullptr && is_knot(*knot), "Bing doubling needs a knot");
    require(iterations >= 1, "Bing doubling needs at least one iteration");
    if (iterations > kMaxDerivedDepth)
        throw ResourceError("Bing doubling: " + std::to_string(iterations) + " iterations exceed the cap " +
                            std::to_string(kMaxDerivedDepth));
    Node n;
    n.kind = NodeKind::BingDouble;
    n.parent = std::move(knot);
    n.count = iterations;
    return make(std::move(n));
}

NodePtr rdouble(std::string label, NodePtr knot)
{
    require(knot != nullptr && is_knot(*knot), "R-doubling needs a knot");
    Node n;
    n.kind = NodeKind::RDouble;
    n.label = label.empty() ? "R" : std::move(label);
    n.parent = std::move(knot);
    return make(std::move(n));
}

NodePtr connected_sum(std::vector<NodePtr> summands)
{
    require(!summands.empty(), "connected sum needs at least one summand");
    for (const auto& s : summands)
        require(s != nullptr && is_knot(*s), "connected sum summands must be knots");
    Node n;
    n.kind = NodeKind::ConnectedSum;
    n.children = std::move(summands);
    return make(std::move(n));
}

NodePtr multiple(NodePtr parent, int count)
{
    require(parent != nullptr, "multiple without a parent");
    require(count >= 1, "multiple count must be at least 1");
    Node n;
    n.kind = NodeKind::Multiple;
    n.parent = std::move(parent);
    n.count = count;
    return make(std::move(n));
}

// ------------------------------------------------------------ catalogue

std::shared_ptr<const KnotRecord> nine46()
{
    static const std::shared_ptr<const KnotRecord> rec = [] {
        auto r = std::make_shared<KnotRecord>();
        r->name = "nine46";
        r->seifert = SeifertMatrix({{0, 2}, {1, 0}}, "nine46");
        r->flags.ribbon = true;
        // band meridians: alpha has order 2t - 1, beta order t - 2
        r->classes["alpha"] = {AlexClass::Kind::Presentation, {LaurentPoly(0), LaurentPoly(1)}, {}};
        r->classes["beta"] = {AlexClass::Kind::Presentation, {LaurentPoly(1), LaurentPoly(0)}, {}};
        r->disk_kernels = {"alpha", "beta"};
        return std::shared_ptr<const KnotRecord>(std::move(r));
    }();
    return rec;
}

std::map<std::string, std::shared_ptr<const KnotRecord>> builtin_catalogue()
{
    std::map<std::string, std::shared_ptr<const KnotRecord>> cat;
    auto add = [&](KnotRecord r) {
        std::string name = r.name;
        cat[name] = std::make_shared<const KnotRecord>(std::move(r));
    };

    KnotRecord unknot;
    unknot.name = "unknot";
    unknot.seifert = SeifertMatrix({}, "unknot");
    unknot.flags.slice = true;
    unknot.flags.ribbon = true;
    add(std::move(unknot));

    KnotRecord trefoil;
    trefoil.name = "trefoil";
    trefoil.seifert = SeifertMatrix({{-1, 1}, {0, -1}}, "trefoil");
    add(std::move(trefoil));

    KnotRecord fig8;
    fig8.name = "figure8";
    fig8.seifert = SeifertMatrix({{1, 1}, {0, -1}}, "figure8");
    fig8.flags.amphichiral = true;
    fig8.flags.fully_amphichiral = true;
    add(std::move(fig8));

    cat["nine46"] = nine46();

    KnotRecord e89;
    e89.name = "eight9";
    e89.seifert = SeifertMatrix({{1, 0, 0, 0, 0, 0},
                                 {1, 1, 0, 0, 1, 0},
                                 {-1, -1, -1, -1, -1, -1},
                                 {-1, -1, 0, -1, -1, 0},
                                 {1, 0, 0, 0, 1, 0},
                                 {-1, -1, 0, -1, -1, -1}},
                                "eight9");
    e89.flags.ribbon = true;
    e89.flags.amphichiral = true;
    e89.flags.fully_amphichiral = true;
    // which of <p>, <q> bounds a slice disk is not recorded; all_fos_zero covers both
    e89.classes["g"] = {AlexClass::Kind::Decomposition, {LaurentPoly(1)}, {}};
    e89.classes["p"] = {AlexClass::Kind::Decomposition, {parse_laurent("t^3 - 2t^2 + t - 1")}, {}};
    e89.classes["q"] = {AlexClass::Kind::Decomposition, {parse_laurent("t^3 - t^2 + 2t - 1")}, {}};
    add(std::move(e89));
    return cat;
}

// ------------------------------------------------------------ desugaring

namespace {

const char* kLkZeroReason = "lk-zero curve in a knot complement lies in the commutator subgroup";

CurveSpec band_curve(const std::string& name)
{
    CurveSpec c;
    c.label = name;
    c.depth = DepthCertificate::structural(1, kLkZeroReason);
    c.alex_class = AlexClass{AlexClass::Kind::Named, {}, name};
    return c;
}

} // namespace

NodePtr desugar(const NodePtr& n)
{
    if (n->kind == NodeKind::RDouble)
        return infect(base_knot(nine46()), {band_curve("alpha"), band_curve("beta")}, {n->parent, n->parent});
    if (n->kind == NodeKind::BingDouble) {
        CurveSpec c;
        c.label = "alpha";
        c.depth = DepthCertificate::from_word(bing_curve(n->count));
        return infect(trivial_link(1 << n->count), {c}, {n->parent});
    }
    return n;
}

// ------------------------------------------------------------ solvability

std::string SolvDegree::str() const
{
    switch (state) {
    case State::Infinite:
        return "infinite";
    case State::Unknown:
        return "unknown";
    case State::Finite:
        break;
    }
    std::string s = std::to_string(twice_level / 2);
    if (twice_level % 2)
        s += ".5";
    return s;
}

namespace {

SolvDegree min_degree(SolvDegree a, const SolvDegree& b)
{
    using S = SolvDegree::State;
    if (a.state == S::Unknown || b.state == S::Unknown) {
        SolvDegree u = a.state == S::Unknown ? a : SolvDegree{S::Unknown, 0, false, {}};
        if (b.state == S::Unknown)
            u.diagnostics.insert(u.diagnostics.end(), b.diagnostics.begin(), b.diagnostics.end());
        return u;
    }
    if (a.state == S::Infinite) {
        SolvDegree r = b;
        r.diagnostics.insert(r.diagnostics.begin(), a.diagnostics.begin(), a.diagnostics.end());
        return r;
    }
    if (b.state == S::Finite && b.twice_level < a.twice_level)
        a.twice_level = b.twice_level;
    a.diagnostics.insert(a.diagnostics.end(), b.diagnostics.begin(), b.diagnostics.end());
    return a;
}

SolvDegree shift(SolvDegree d, int p)
{
    if (d.state == SolvDegree::State::Finite)
        d.twice_level += 2 * p;
    return d;
}

} // namespace

std::optional<int> certified_depth(const CurveSpec& c)
{
    if (!c.depth)
        return std::nullopt;
    if (c.depth->kind == DepthCertificate::Kind::Word)
        return derived_depth(*c.depth->word, kMaxDerivedDepth).depth;
    return c.depth->depth;
}

SolvDegree solvability_upper_bound(const NodePtr& n)
{
    switch (n->kind) {
    case NodeKind::BaseKnot: {
        const KnotRecord& k = *n->knot;
        if (k.flags.slice_like())
            return SolvDegree::infinite();
        auto a = k.arf_invariant();
        if (!a)
            return SolvDegree::unknown("knot '" + k.name + "' is opaque and has no Arf invariant");
        if (*a != 0)
            return SolvDegree::unknown("Arf(" + k.name + ") = 1, so it is not (0)-solvable");
        return SolvDegree::finite(0);
    }
    case NodeKind::TrivialLink:
        return SolvDegree::infinite();
    case NodeKind::SliceLinkAssumed: {
        SolvDegree d = SolvDegree::infinite();
        d.diagnostics.push_back("link '" + n->label + "' is assumed slice");
        return d;
    }
    case NodeKind::Infect: {
        SolvDegree best = solvability_upper_bound(n->parent);
        for (std::size_t i = 0; i < n->curves.size(); ++i) {
            const auto& c = n->curves[i];
            auto p = certified_depth(c);
            if (!p) {
                best = min_degree(best, SolvDegree::unknown("curve '" + c.label + "' has no depth certificate"));
                continue;
            }
            best = min_degree(best, shift(solvability_upper_bound(n->children[i]), *p));
        }
        return best;
    }
    case NodeKind::BingDouble:
        // the n-fold Bing curve is an n-fold iterated commutator
        return shift(solvability_upper_bound(n->parent), n->count);
    case NodeKind::RDouble:
        return solvability_upper_bound(desugar(n));
    case NodeKind::ConnectedSum: {
        SolvDegree best = SolvDegree::infinite();
        for (const auto& c : n->children)
            best = min_degree(best, solvability_upper_bound(c));
        return best;
    }
    case NodeKind::Multiple:
        return solvability_upper_bound(n->parent);
    }
    return SolvDegree::unknown("unhandled node");
}

// ------------------------------------------------------------ clones

int tower_height(const NodePtr& n)
{
    int h = 0;
    for (const Node* p = n.get(); p->kind == NodeKind::RDouble; p = p->parent.get())
        ++h;
    return h;
}

NodePtr expand_clones(const NodePtr& tower, int i)
{
    const int h = tower_height(tower);
    if (i < 0 || i > h)
        throw InputError("expand_clones: level " + std::to_string(i) + " outside 0.." + std::to_string(h));
    if (i == 0)
        return tower;
    if (i == 1)
        return desugar(tower);
    if (i > 20)
        throw ResourceError("expand_clones: 2^" + std::to_string(i) + " clones exceed the cap");
    NodePtr sub = tower;
    for (int k = 0; k < i; ++k)
        sub = sub->parent;
    auto r = std::make_shared<KnotRecord>();
    r->name = "R_" + std::to_string(i);
    r->flags.ribbon = true;
    std::vector<CurveSpec> curves;
    std::vector<NodePtr> infectants;
    const int clones = 1 << i;
    for (int j = 1; j <= clones; ++j) {
        CurveSpec c;
        c.label = "clone" + std::to_string(j);
        c.depth = DepthCertificate::structural(i, "clone of the R_" + std::to_string(i) + " tower at depth " +
                                                      std::to_string(i));
        curves.push_back(std::move(c));
        infectants.push_back(sub);
    }
    return infect(base_knot(std::move(r)), std::move(curves), std::move(infectants));
}

// ------------------------------------------------------------ normal form

namespace {

std::string curve_string(const CurveSpec& c)
{
    std::string s = c.label;
    if (c.depth) {
        switch (c.depth->kind) {
        case DepthCertificate::Kind::Word:
            s += "{word " + c.depth->word->str() + " /" + std::to_string(c.depth->word->rank()) + "}";
            break;
        case DepthCertificate::Kind::Assumed:
            s += "{assumed " + std::to_string(c.depth->depth) + "}";
            break;
        case DepthCertificate::Kind::Structural:
            s += "{structural " + std::to_string(c.depth->depth) + "}";
            break;
        }
    }
    if (c.alex_class) {
        const auto& a = *c.alex_class;
        if (a.kind == AlexClass::Kind::Named) {
            s += "[" + a.name + "]";
        } else {
            s += a.kind == AlexClass::Kind::Presentation ? "[pres " : "[dec ";
            for (std::size_t i = 0; i < a.coords.size(); ++i)
                s += (i ? "; " : "") + a.coords[i].str();
            s += "]";
        }
    }
    return s;
}

} // namespace

std::string canonical_string(const Node& n)
{
    switch (n.kind) {
    case NodeKind::BaseKnot:
        return n.knot->name;
    case NodeKind::TrivialLink:
        return "trivial(" + std::to_string(n.components) + ")";
    case NodeKind::SliceLinkAssumed:
        return "slice_link(" + n.label + ", " + std::to_string(n.components) + ")";
    case NodeKind::Infect: {
        std::string s = "infect(" + canonical_string(*n.parent);
        for (std::size_t i = 0; i < n.curves.size(); ++i)
            s += "; " + curve_string(n.curves[i]) + " -> " + canonical_string(*n.children[i]);
        return s + ")";
    }
    case NodeKind::BingDouble:
        return "bing(" + canonical_string(*n.parent) + ", " + std::to_string(n.count) + ")";
    case NodeKind::RDouble:
        return "rdouble(" + n.label + ", " + canonical_string(*n.parent) + ")";
    case NodeKind::ConnectedSum: {
        std::string s = "sum(";
        for (std::size_t i = 0; i < n.children.size(); ++i)
            s += (i ? ", " : "") + canonical_string(*n.children[i]);
        return s + ")";
    }
    case NodeKind::Multiple:
        return "multiple(" + canonical_string(*n.parent) + ", " + std::to_string(n.count) + ")";
    }
    return "?";
}

NodePtr normalize_tree(const NodePtr& n)
{
    switch (n->kind) {
    case NodeKind::BaseKnot:
    case NodeKind::TrivialLink:
    case NodeKind::SliceLinkAssumed:
        return n;
    case NodeKind::Infect: {
        std::vector<NodePtr> kids;
        for (const auto& c : n->children)
            kids.push_back(normalize_tree(c));
        return infect(normalize_tree(n->parent), n->curves, std::move(kids));
    }
    case NodeKind::BingDouble:
        return bing_double(normalize_tree(n->parent), n->count);
    case NodeKind::RDouble:
        return rdouble(n->label, normalize_tree(n->parent));
    case NodeKind::Multiple: {
        NodePtr p = normalize_tree(n->parent);
        if (n->count == 1)
            return p;
        if (is_knot(*p))
            return normalize_tree(connected_sum(std::vector<NodePtr>(static_cast<std::size_t>(n->count), p)));
        if (p->kind == NodeKind::Multiple)
            return multiple(p->parent, p->count * n->count);
        return multiple(p, n->count);
    }
    case NodeKind::ConnectedSum: {
        std::vector<NodePtr> flat;
        for (const auto& c : n->children) {
            NodePtr k = normalize_tree(c);
            if (k->kind == NodeKind::ConnectedSum)
                flat.insert(flat.end(), k->children.begin(), k->children.end());
            else
                flat.push_back(k);
        }
        if (flat.size() == 1)
            return flat.front();
        std::vector<std::pair<std::string, NodePtr>> keyed;
        for (auto& k : flat)
            keyed.emplace_back(canonical_string(*k), k);
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        flat.clear();
        for (auto& [key, k] : keyed)
            flat.push_back(k);
        return connected_sum(std::move(flat));
    }
    }
    return n;
}

} // namespace knotconc
