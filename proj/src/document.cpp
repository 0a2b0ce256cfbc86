#include "knotconc/document.hpp"

#include "knotconc/errors.hpp"

#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

namespace knotconc {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw InputError(where + ": " + what);
}

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        fail(where, "expected an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || k == a;
        if (!ok)
            fail(where, "unknown key \"" + k + "\"");
    }
}

int get_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    return j.get<int>();
}

std::string get_string(const Json& j, const std::string& where)
{
    if (!j.is_string())
        fail(where, "expected a string");
    return j.get<std::string>();
}

Rational get_rational(const Json& j, const std::string& where)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number())
            return parse_rational(j.dump());
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
    fail(where, "expected a number or a numeric string");
}

} // namespace

LaurentPoly parse_poly_json(const Json& j)
{
    if (j.is_string())
        return parse_laurent(j.get<std::string>());
    if (j.is_number_integer())
        return LaurentPoly(Rational(j.get<long>()));
    if (!j.is_array())
        throw InputError("polynomial: expected a string or [[exponent, coefficient], ...]");
    std::vector<std::pair<long, Rational>> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
            throw InputError("polynomial: each term must be [exponent, coefficient]");
        long e = t[0].get<long>();
        Rational c;
        if (t[1].is_array()) {
            if (t[1].size() != 2 || !t[1][0].is_number_integer() || !t[1][1].is_number_integer())
                throw InputError("polynomial: coefficient must be [numerator, denominator]");
            long den = t[1][1].get<long>();
            if (den == 0)
                throw InputError("polynomial: zero denominator");
            c = make_rational(BigInt(t[1][0].get<long>()), BigInt(den));
        } else if (t[1].is_number_integer()) {
            c = Rational(t[1].get<long>());
        } else {
            throw InputError("polynomial: coefficient must be an integer or [numerator, denominator]");
        }
        if (!terms.empty() && e >= terms.back().first)
            throw InputError("polynomial: exponents must be strictly descending");
        terms.emplace_back(e, c);
    }
    LaurentPoly f;
    for (const auto& [e, c] : terms)
        f = f + LaurentPoly::monomial(c, e);
    return f;
}

namespace {

std::vector<LaurentPoly> parse_coords(const Json& j, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array of polynomials");
    std::vector<LaurentPoly> out;
    for (const auto& x : j) {
        try {
            out.push_back(parse_poly_json(x));
        } catch (const InputError& e) {
            fail(where, e.what());
        }
    }
    return out;
}

AlexClass parse_class(const Json& j, const std::string& where)
{
    if (j.is_string())
        return {AlexClass::Kind::Named, {}, j.get<std::string>()};
    only_keys(j, where, {"presentation", "decomposition"});
    if (j.size() != 1)
        fail(where, "give exactly one of \"presentation\" or \"decomposition\"");
    if (j.contains("presentation"))
        return {AlexClass::Kind::Presentation, parse_coords(j["presentation"], where + ".presentation"), {}};
    return {AlexClass::Kind::Decomposition, parse_coords(j["decomposition"], where + ".decomposition"), {}};
}

std::shared_ptr<const KnotRecord> parse_knot(const std::string& name, const Json& j)
{
    const std::string where = "knots." + name;
    only_keys(j, where, {"seifert", "flags", "arf", "classes", "disk_kernels"});
    auto k = std::make_shared<KnotRecord>();
    k->name = name;
    if (j.contains("seifert")) {
        const Json& s = j["seifert"];
        if (!s.is_array())
            fail(where + ".seifert", "expected a square integer matrix");
        IntMatrix m;
        for (const auto& row : s) {
            if (!row.is_array())
                fail(where + ".seifert", "rows must be arrays");
            std::vector<long> r;
            for (const auto& x : row) {
                if (!x.is_number_integer())
                    fail(where + ".seifert", "entries must be integers");
                r.push_back(x.get<long>());
            }
            m.push_back(std::move(r));
        }
        try {
            k->seifert = SeifertMatrix(std::move(m), name);
        } catch (const InputError& e) {
            fail(where + ".seifert", e.what());
        }
    }
    if (j.contains("flags")) {
        if (!j["flags"].is_array())
            fail(where + ".flags", "expected an array of strings");
        for (const auto& f : j["flags"]) {
            std::string s = get_string(f, where + ".flags");
            if (s == "amphichiral")
                k->flags.amphichiral = true;
            else if (s == "fully_amphichiral")
                k->flags.fully_amphichiral = k->flags.amphichiral = true;
            else if (s == "ribbon")
                k->flags.ribbon = true;
            else if (s == "slice")
                k->flags.slice = true;
            else
                fail(where + ".flags", "unknown flag \"" + s + "\"");
        }
    }
    if (j.contains("arf")) {
        int a = get_int(j["arf"], where + ".arf");
        if (a != 0 && a != 1)
            fail(where + ".arf", "must be 0 or 1");
        if (k->seifert && arf(*k->seifert) != a)
            fail(where + ".arf", "contradicts the Seifert matrix");
        k->arf = a;
    }
    if (j.contains("classes")) {
        if (!j["classes"].is_object())
            fail(where + ".classes", "expected an object");
        for (const auto& [cname, c] : j["classes"].items()) {
            AlexClass cls = parse_class(c, where + ".classes." + cname);
            if (cls.kind == AlexClass::Kind::Named)
                fail(where + ".classes." + cname, "a declared class needs coordinates");
            k->classes[cname] = std::move(cls);
        }
    }
    if (j.contains("disk_kernels")) {
        if (!j["disk_kernels"].is_array())
            fail(where + ".disk_kernels", "expected an array of class names");
        for (const auto& d : j["disk_kernels"]) {
            std::string s = get_string(d, where + ".disk_kernels");
            if (!k->classes.count(s))
                fail(where + ".disk_kernels", "unknown class \"" + s + "\"");
            k->disk_kernels.push_back(s);
        }
        if (!k->flags.slice_like())
            fail(where + ".disk_kernels", "disk kernels need a slice or ribbon knot");
    }
    if (k->seifert) {
        // validate class coordinates against the module now
        AlexModule m(*k->seifert);
        for (const auto& [cname, c] : k->classes) {
            try {
                resolve_class(*k, m, c);
            } catch (const InputError& e) {
                fail(where + ".classes." + cname, e.what());
            }
        }
    }
    return k;
}

CurveSpec parse_curve(const Json& j, const std::string& where, const NodePtr& parent)
{
    only_keys(j, where, {"label", "word", "rank", "assumed_depth", "bing_curve", "class", "lk_zero"});
    CurveSpec c;
    if (j.contains("label"))
        c.label = get_string(j["label"], where + ".label");
    int certs = int(j.contains("word")) + int(j.contains("assumed_depth")) + int(j.contains("bing_curve"));
    if (certs > 1)
        fail(where, "give at most one of \"word\", \"assumed_depth\", \"bing_curve\"");
    if (j.contains("word")) {
        int rank = j.contains("rank") ? get_int(j["rank"], where + ".rank") : components(*parent);
        if (rank < 1)
            fail(where + ".rank", "must be positive");
        try {
            c.depth = DepthCertificate::from_word(FreeWord::parse(get_string(j["word"], where + ".word"), rank));
        } catch (const InputError& e) {
            fail(where + ".word", e.what());
        }
    } else if (j.contains("rank")) {
        fail(where + ".rank", "only meaningful with \"word\"");
    }
    if (j.contains("assumed_depth")) {
        int d = get_int(j["assumed_depth"], where + ".assumed_depth");
        if (d < 0)
            fail(where + ".assumed_depth", "must be nonnegative");
        c.depth = DepthCertificate::assumed(d);
    }
    if (j.contains("bing_curve")) {
        int n = get_int(j["bing_curve"], where + ".bing_curve");
        if (n < 1)
            fail(where + ".bing_curve", "must be positive");
        c.depth = DepthCertificate::from_word(bing_curve(n));
    }
    if (j.contains("class"))
        c.alex_class = parse_class(j["class"], where + ".class");
    if (j.contains("lk_zero")) {
        if (!j["lk_zero"].is_boolean())
            fail(where + ".lk_zero", "expected a boolean");
        c.lk_zero = j["lk_zero"].get<bool>();
    }
    if (c.label.empty() && c.alex_class && c.alex_class->kind == AlexClass::Kind::Named)
        c.label = c.alex_class->name;
    return c;
}

struct NodeParser {
    const Document& doc;
    const Json& builds;   // raw build definitions, for forward references
    std::map<std::string, NodePtr>& done;
    std::set<std::string> active;

    NodePtr build(const std::string& name)
    {
        if (auto it = done.find(name); it != done.end())
            return it->second;
        if (!builds.contains(name))
            fail("builds", "unknown build \"" + name + "\"");
        if (active.count(name))
            fail("builds." + name, "cyclic reference");
        active.insert(name);
        NodePtr n = node(builds[name], "builds." + name);
        active.erase(name);
        done[name] = n;
        return n;
    }

    std::vector<NodePtr> list(const Json& j, const std::string& where)
    {
        if (!j.is_array() || j.empty())
            fail(where, "expected a nonempty array");
        std::vector<NodePtr> out;
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(node(j[i], where + "[" + std::to_string(i) + "]"));
        return out;
    }

    NodePtr node(const Json& j, const std::string& where)
    {
        if (!j.is_object())
            fail(where, "expected an object");
        try {
            return node_inner(j, where);
        } catch (const InputError& e) {
            std::string msg = e.what();
            if (msg.rfind("builds", 0) == 0 || msg.rfind("knots", 0) == 0 || msg.rfind("node", 0) == 0)
                throw;
            fail(where, msg);
        }
    }

    NodePtr node_inner(const Json& j, const std::string& where)
    {
        if (j.contains("knot")) {
            only_keys(j, where, {"knot"});
            return base_knot(doc.knot(get_string(j["knot"], where + ".knot")));
        }
        if (j.contains("ref")) {
            only_keys(j, where, {"ref"});
            return build(get_string(j["ref"], where + ".ref"));
        }
        if (!j.contains("op"))
            fail(where, "expected \"knot\", \"ref\" or \"op\"");
        const std::string op = get_string(j["op"], where + ".op");
        if (op == "trivial") {
            only_keys(j, where, {"op", "components"});
            return trivial_link(get_int(j.value("components", Json(0)), where + ".components"));
        }
        if (op == "slice_link") {
            only_keys(j, where, {"op", "label", "components"});
            return slice_link(get_string(j.value("label", Json("T")), where + ".label"),
                              get_int(j.value("components", Json(0)), where + ".components"));
        }
        if (op == "infect") {
            only_keys(j, where, {"op", "parent", "curves", "infectants"});
            if (!j.contains("parent"))
                fail(where, "missing \"parent\"");
            NodePtr parent = node(j["parent"], where + ".parent");
            if (!j.contains("curves") || !j["curves"].is_array())
                fail(where, "missing \"curves\" array");
            std::vector<CurveSpec> curves;
            for (std::size_t i = 0; i < j["curves"].size(); ++i)
                curves.push_back(parse_curve(j["curves"][i], where + ".curves[" + std::to_string(i) + "]", parent));
            if (!j.contains("infectants"))
                fail(where, "missing \"infectants\"");
            return infect(parent, std::move(curves), list(j["infectants"], where + ".infectants"));
        }
        if (op == "bing") {
            only_keys(j, where, {"op", "parent", "iterations"});
            if (!j.contains("parent"))
                fail(where, "missing \"parent\"");
            return bing_double(node(j["parent"], where + ".parent"),
                               get_int(j.value("iterations", Json(1)), where + ".iterations"));
        }
        if (op == "rdouble") {
            only_keys(j, where, {"op", "parent", "label"});
            if (!j.contains("parent"))
                fail(where, "missing \"parent\"");
            return rdouble(get_string(j.value("label", Json("R")), where + ".label"), node(j["parent"], where + ".parent"));
        }
        if (op == "sum") {
            only_keys(j, where, {"op", "summands"});
            if (!j.contains("summands"))
                fail(where, "missing \"summands\"");
            return connected_sum(list(j["summands"], where + ".summands"));
        }
        if (op == "multiple") {
            only_keys(j, where, {"op", "parent", "count"});
            if (!j.contains("parent"))
                fail(where, "missing \"parent\"");
            return multiple(node(j["parent"], where + ".parent"), get_int(j.value("count", Json(1)), where + ".count"));
        }
        fail(where + ".op", "unknown op \"" + op + "\"");
    }
};

const std::regex& atom_syntax()
{
    static const std::regex re(R"(^(1|rho0\([^()]+\)|rho1\([^()]+\)|C\([^()]+\))$)");
    return re;
}

} // namespace

std::shared_ptr<const KnotRecord> Document::knot(const std::string& name) const
{
    auto it = knots.find(name);
    if (it == knots.end())
        throw InputError("unknown knot \"" + name + "\"");
    return it->second;
}

NodePtr Document::target(const std::string& name) const
{
    if (auto it = builds.find(name); it != builds.end())
        return it->second;
    if (knots.count(name))
        return base_knot(knot(name));
    throw InputError("unknown build or knot \"" + name + "\"");
}

RhoContext Document::context() const
{
    RhoContext ctx;
    ctx.knots = knots;
    ctx.tol = options.tol;
    return ctx;
}

Document builtin_document()
{
    Document d;
    d.knots = builtin_catalogue();
    return d;
}

NodePtr parse_node(const Json& j, const Document& doc)
{
    std::map<std::string, NodePtr> done = doc.builds;
    static const Json no_builds = Json::object();
    NodeParser p{doc, no_builds, done, {}};
    return p.node(j, "node");
}

Document parse_document(const Json& j)
{
    only_keys(j, "document", {"knots", "axioms", "builds", "options"});
    Document doc = builtin_document();
    if (j.contains("options")) {
        const Json& o = j["options"];
        only_keys(o, "options", {"tol", "support_cap"});
        if (o.contains("tol")) {
            doc.options.tol = get_rational(o["tol"], "options.tol");
            if (doc.options.tol <= 0)
                fail("options.tol", "must be positive");
            doc.options.tol_text = o["tol"].is_string() ? o["tol"].get<std::string>() : o["tol"].dump();
        }
        if (o.contains("support_cap")) {
            int cap = get_int(o["support_cap"], "options.support_cap");
            if (cap < 1)
                fail("options.support_cap", "must be positive");
            doc.options.support_cap = static_cast<std::size_t>(cap);
        }
    }
    if (j.contains("knots")) {
        if (!j["knots"].is_object())
            fail("knots", "expected an object");
        for (const auto& [name, k] : j["knots"].items()) {
            if (doc.knots.count(name))
                fail("knots." + name, "redefines a built-in knot");
            doc.knots[name] = parse_knot(name, k);
        }
    }
    if (j.contains("axioms")) {
        const Json& a = j["axioms"];
        only_keys(a, "axioms", {"independent", "nonzero"});
        auto atoms = [&](const Json& arr, const std::string& where) {
            if (!arr.is_array())
                fail(where, "expected an array of atom names");
            std::set<std::string> s;
            for (const auto& x : arr) {
                std::string name = get_string(x, where);
                if (!std::regex_match(name, atom_syntax()))
                    fail(where, "\"" + name + "\" is not an atom such as rho0(K), rho1(K), C(M) or 1");
                s.insert(name);
            }
            return s;
        };
        if (a.contains("independent")) {
            if (!a["independent"].is_array())
                fail("axioms.independent", "expected an array of atom sets");
            for (std::size_t i = 0; i < a["independent"].size(); ++i)
                doc.axioms.independent.push_back(
                    atoms(a["independent"][i], "axioms.independent[" + std::to_string(i) + "]"));
        }
        if (a.contains("nonzero"))
            for (const auto& name : atoms(a["nonzero"], "axioms.nonzero"))
                doc.axioms.independent.push_back({name});
    }
    if (j.contains("builds")) {
        const Json& b = j["builds"];
        if (!b.is_object())
            fail("builds", "expected an object");
        NodeParser p{doc, b, doc.builds, {}};
        for (const auto& [name, def] : b.items()) {
            if (doc.knots.count(name))
                fail("builds." + name, "name clashes with a knot");
            p.build(name);
        }
    }
    return doc;
}

Document parse_document_text(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("document is not valid JSON: ") + e.what());
    }
    return parse_document(j);
}

Document load_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open document \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document_text(ss.str());
}

// ------------------------------------------------------------ output

Json to_json(const RhoTerm& t)
{
    Json atoms = Json::object();
    for (const auto& [a, c] : t.coefficients())
        atoms[a.str()] = to_string(c);
    Json j = {{"text", t.str()}, {"atoms", atoms}, {"constant", to_string(t.constant())}};
    if (auto v = t.evaluate())
        j["interval"] = {to_decimal(v->lo(), 12), to_decimal(v->hi(), 12)};
    return j;
}

Json to_json(const SolvDegree& d)
{
    Json j = {{"level", d.str()}, {"rational", d.rational}};
    j["diagnostics"] = d.diagnostics;
    return j;
}

Json to_json(const FosResult& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"submodule", e.label}, {"dimension", e.dimension}, {"term", to_json(e.term)}});
    return {{"knot", r.knot}, {"complete", r.complete}, {"signatures", entries}, {"notes", r.notes}};
}

Json to_json(const Verdict& v)
{
    Json hyps = Json::array();
    for (const auto& h : v.hypotheses)
        hyps.push_back({{"hypothesis", h.text}, {"status", to_string(h.status)}});
    Json j = {{"conclusion", to_string(v.conclusion)}, {"theorem", v.theorem}, {"hypotheses", hyps}};
    j["condition"] = v.condition.empty() ? Json() : Json(v.condition);
    if (v.residual) {
        Json ex = Json::array();
        for (const auto& t : v.residual->excluded)
            ex.push_back(t.str());
        j["residual"] = {{"subject", v.residual->subject.str()}, {"excluded", ex}};
    }
    if (v.solvable_bound)
        j["solvable_upper_bound"] = to_json(*v.solvable_bound);
    j["notes"] = v.notes;
    return j;
}

Json to_json(const Node& n)
{
    switch (n.kind) {
    case NodeKind::BaseKnot:
        return {{"knot", n.knot->name}};
    case NodeKind::TrivialLink:
        return {{"op", "trivial"}, {"components", n.components}};
    case NodeKind::SliceLinkAssumed:
        return {{"op", "slice_link"}, {"label", n.label}, {"components", n.components}};
    case NodeKind::Infect: {
        Json curves = Json::array();
        for (const auto& c : n.curves) {
            Json cj = {{"label", c.label}};
            if (c.depth) {
                switch (c.depth->kind) {
                case DepthCertificate::Kind::Word:
                    cj["word"] = c.depth->word->str();
                    cj["rank"] = c.depth->word->rank();
                    break;
                case DepthCertificate::Kind::Assumed:
                    cj["assumed_depth"] = c.depth->depth;
                    break;
                case DepthCertificate::Kind::Structural:
                    cj["structural_depth"] = c.depth->depth;
                    cj["reason"] = c.depth->reason;
                    break;
                }
            }
            if (c.alex_class) {
                const auto& a = *c.alex_class;
                if (a.kind == AlexClass::Kind::Named) {
                    cj["class"] = a.name;
                } else {
                    Json coords = Json::array();
                    for (const auto& p : a.coords)
                        coords.push_back(p.str());
                    cj["class"] = {{a.kind == AlexClass::Kind::Presentation ? "presentation" : "decomposition", coords}};
                }
            }
            curves.push_back(cj);
        }
        Json inf = Json::array();
        for (const auto& c : n.children)
            inf.push_back(to_json(*c));
        return {{"op", "infect"}, {"parent", to_json(*n.parent)}, {"curves", curves}, {"infectants", inf}};
    }
    case NodeKind::BingDouble:
        return {{"op", "bing"}, {"parent", to_json(*n.parent)}, {"iterations", n.count}};
    case NodeKind::RDouble:
        return {{"op", "rdouble"}, {"label", n.label}, {"parent", to_json(*n.parent)}};
    case NodeKind::ConnectedSum: {
        Json s = Json::array();
        for (const auto& c : n.children)
            s.push_back(to_json(*c));
        return {{"op", "sum"}, {"summands", s}};
    }
    case NodeKind::Multiple:
        return {{"op", "multiple"}, {"parent", to_json(*n.parent)}, {"count", n.count}};
    }
    return {};
}

} // namespace knotconc
