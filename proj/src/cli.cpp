#include "knotconc/cli.hpp"

#include "knotconc/document.hpp"
#include "knotconc/errors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace knotconc {

namespace {

struct Ctx {
    Document doc;
    bool json = false;
    std::ostringstream out;
    int code = kExitOk;

    void emit(const Json& j) { out << j.dump(2) << "\n"; }
};

const KnotRecord& seifert_knot(const Ctx& c, const std::string& name)
{
    auto k = c.doc.knot(name);
    if (!k->seifert)
        throw InputError("knot \"" + name + "\" has no Seifert matrix");
    return *k;
}

std::string factor_string(const LaurentPoly& f)
{
    if (f.is_unit())
        return "1";
    std::string s;
    for (const auto& ft : factor(f)) {
        s += "(" + ft.factor.str() + ")";
        if (ft.multiplicity > 1)
            s += "^" + std::to_string(ft.multiplicity);
    }
    return s;
}

// smallest d with 10^-d <= tol
int decimals_for(const Rational& tol)
{
    int d = 0;
    Rational p = 1;
    while (p > tol && d < 60) {
        p /= 10;
        ++d;
    }
    return d;
}

void cmd_alex(Ctx& c, const std::string& name)
{
    const KnotRecord& k = seifert_knot(c, name);
    AlexModule m(*k.seifert);
    LaurentPoly delta = alexander_poly(*k.seifert);
    std::vector<std::string> inv;
    for (const auto& d : m.invariant_factors())
        inv.push_back(d.str());
    auto primary = m.primary_decomposition();
    if (c.json) {
        Json prim = Json::array();
        for (const auto& p : primary)
            prim.push_back({{"prime", p.prime.str()}, {"exponent", p.exponent}});
        c.emit({{"knot", name},
                {"alexander_polynomial", delta.str()},
                {"factors", factor_string(delta)},
                {"invariant_factors", inv},
                {"cyclic", m.is_cyclic()},
                {"primary_summands", prim}});
        return;
    }
    c.out << "knot: " << name << "\n";
    c.out << "alexander polynomial: " << delta.str() << "\n";
    c.out << "factors: " << factor_string(delta) << "\n";
    c.out << "invariant factors: " << (inv.empty() ? std::string("none") : fmt::format("{}", fmt::join(inv, ", "))) << "\n";
    c.out << "cyclic: " << (m.is_cyclic() ? "yes" : "no") << "\n";
    c.out << "primary summands: " << primary.size() << "\n";
    for (const auto& p : primary)
        c.out << "  (" << p.prime.str() << ")^" << p.exponent << "\n";
}

struct Arc {
    double start, end;
    int sigma;
};

std::vector<Arc> arcs_of(const SignatureFunction& s)
{
    std::vector<Arc> arcs;
    double prev = 0;
    for (std::size_t i = 0; i < s.jumps.size(); ++i) {
        double u = s.jumps[i].turns();
        arcs.push_back({prev, u, s.values[i]});
        prev = u;
    }
    arcs.push_back({prev, 1.0, s.values.back()});
    return arcs;
}

void cmd_sig(Ctx& c, const std::string& name, const std::string& csv)
{
    const KnotRecord& k = seifert_knot(c, name);
    SignatureFunction s = signature_function(*k.seifert);
    auto arcs = arcs_of(s);
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f)
            throw InputError("cannot write \"" + csv + "\"");
        f << "arc,start_turns,end_turns,signature\n";
        for (std::size_t i = 0; i < arcs.size(); ++i)
            f << fmt::format("{},{:.9f},{:.9f},{}\n", i, arcs[i].start, arcs[i].end, arcs[i].sigma);
    }
    if (c.json) {
        Json jumps = Json::array();
        for (const auto& j : s.jumps)
            jumps.push_back({{"x_interval", {to_string(j.x.lo), to_string(j.x.hi)}},
                             {"upper_half", j.upper_half},
                             {"turns", j.turns()}});
        Json a = Json::array();
        for (const auto& r : arcs)
            a.push_back({{"start_turns", r.start}, {"end_turns", r.end}, {"signature", r.sigma}});
        c.emit({{"knot", name}, {"jumps", jumps}, {"arcs", a}});
        return;
    }
    c.out << "knot: " << name << "\n";
    c.out << "jumps: " << s.jumps.size() << "\n";
    c.out << fmt::format("{:<5}{:<14}{:<14}{}\n", "arc", "start_turns", "end_turns", "signature");
    for (std::size_t i = 0; i < arcs.size(); ++i)
        c.out << fmt::format("{:<5}{:<14.9f}{:<14.9f}{}\n", i, arcs[i].start, arcs[i].end, arcs[i].sigma);
    if (!csv.empty())
        c.out << "wrote " << csv << "\n";
}

void cmd_rho0(Ctx& c, const std::string& name, const std::string& tol_text)
{
    const KnotRecord& k = seifert_knot(c, name);
    Rational tol = c.doc.options.tol;
    std::string shown = c.doc.options.tol_text;
    if (!tol_text.empty()) {
        try {
            tol = parse_rational(tol_text);
        } catch (const std::exception& e) {
            throw InputError("--tol: " + std::string(e.what()));
        }
        shown = tol_text;
    }
    if (tol <= 0)
        throw InputError("--tol must be positive");
    CertifiedReal v = rho0(*k.seifert, tol / 2);
    const int d = decimals_for(tol);
    std::string text = v.exact() ? to_string(v.mid) + " (exact)" : to_decimal(v.mid, d) + " ± " + shown;
    if (c.json) {
        c.emit({{"knot", name},
                {"rho0", text},
                {"exact", v.exact()},
                {"interval", {to_string(v.lo()), to_string(v.hi())}},
                {"tol", shown}});
        return;
    }
    c.out << text << "\n";
}

void cmd_arf(Ctx& c, const std::string& name)
{
    auto k = c.doc.knot(name);
    auto a = k->arf_invariant();
    if (!a)
        throw InputError("knot \"" + name + "\" has neither a Seifert matrix nor a declared Arf invariant");
    if (c.json) {
        c.emit({{"knot", name}, {"arf", *a}});
        return;
    }
    c.out << "Arf(" << name << ") = " << *a << "\n";
}

void cmd_submodules(Ctx& c, const std::string& name)
{
    const KnotRecord& k = seifert_knot(c, name);
    AlexModule m(*k.seifert);
    auto subs = isotropic_submodules(m);
    if (c.json) {
        Json rows = Json::array();
        for (const auto& p : subs)
            rows.push_back({{"submodule", submodule_label(k, m, p)},
                            {"dimension", p.dimension()},
                            {"divisor", p.cyclic_divisor()->str()}});
        c.emit({{"knot", name}, {"isotropic_submodules", rows}});
        return;
    }
    c.out << "knot: " << name << "\n";
    c.out << "isotropic submodules: " << subs.size() << "\n";
    c.out << fmt::format("{:<14}{:<6}{}\n", "submodule", "dim", "divisor");
    for (const auto& p : subs)
        c.out << fmt::format("{:<14}{:<6}{}\n", submodule_label(k, m, p), p.dimension(), p.cyclic_divisor()->str());
}

void cmd_fos(Ctx& c, const std::string& target)
{
    FosResult r = first_order_signatures(c.doc.target(target), c.doc.context());
    if (c.json) {
        c.emit(to_json(r));
        return;
    }
    c.out << "knot: " << target << " (base " << r.knot << ")\n";
    c.out << fmt::format("{:<14}{:<6}{}\n", "submodule", "dim", "signature");
    for (const auto& e : r.entries)
        c.out << fmt::format("{:<14}{:<6}{}\n", e.label, e.dimension, e.term.str());
    if (!r.complete)
        c.out << "incomplete: the isotropic submodules of " << r.knot << " are unknown\n";
    for (const auto& n : r.notes)
        c.out << "note: " << n << "\n";
}

void cmd_dseries(Ctx& c, const std::string& word, int rank, int max)
{
    if (rank < 1)
        throw InputError("--rank must be positive");
    FreeWord w = FreeWord::parse(word, rank);
    DepthResult r = derived_depth(w, max, c.doc.options.support_cap);
    if (c.json) {
        c.emit({{"word", w.str()}, {"rank", rank}, {"depth", r.depth}, {"at_least", r.at_least}});
        return;
    }
    c.out << "depth = " << r.str() << "\n";
}

void cmd_solvable(Ctx& c, const std::string& target)
{
    SolvDegree d = solvability_upper_bound(c.doc.target(target));
    if (d.state == SolvDegree::State::Unknown)
        c.code = kExitHypothesis;
    if (c.json) {
        c.emit(to_json(d));
        return;
    }
    c.out << "solvable: " << d.str() << "\n";
    for (const auto& s : d.diagnostics)
        c.out << "  - " << s << "\n";
}

void cmd_verdict(Ctx& c, const std::string& target)
{
    Verdict v = verdict_for(c.doc.target(target), c.doc.context(), c.doc.axioms);
    if (v.has_failed_hypothesis())
        c.code = kExitHypothesis;
    if (c.json) {
        c.emit(to_json(v));
        return;
    }
    c.out << v.transcript();
}

void cmd_expand(Ctx& c, const std::string& target, int level)
{
    NodePtr e = expand_clones(c.doc.target(target), level);
    const std::size_t slots = e->kind == NodeKind::Infect && level > 0 ? e->curves.size() : 1;
    SolvDegree d = solvability_upper_bound(e);
    if (c.json) {
        c.emit({{"level", level}, {"clone_slots", slots}, {"solvable", d.str()}, {"tree", to_json(*e)}});
        return;
    }
    c.out << "level: " << level << "\n";
    c.out << "clone slots: " << slots << "\n";
    c.out << "solvable: " << d.str() << "\n";
    c.out << "tree: " << canonical_string(*e) << "\n";
}

void cmd_canon(Ctx& c, const std::string& target)
{
    NodePtr n = normalize_tree(c.doc.target(target));
    if (c.json) {
        c.emit({{"canonical", canonical_string(*n)}, {"tree", to_json(*n)}});
        return;
    }
    c.out << canonical_string(*n) << "\n";
}

} // namespace

RunResult run(const std::vector<std::string>& args)
{
    CLI::App app{"Concordance invariants of knots and links built by infection"};
    app.name("knotconc");
    app.require_subcommand(1);

    Ctx c;
    std::string doc_path;
    app.add_option("--doc", doc_path, "input document (JSON)");
    app.add_flag("--json", c.json, "JSON output");

    std::string name, csv, tol, word;
    int rank = 0, max = kMaxDerivedDepth, level = 0;

    auto* alex = app.add_subcommand("alex", "Alexander polynomial and module");
    alex->add_option("knot", name)->required();
    auto* sig = app.add_subcommand("sig", "Levine-Tristram signature function");
    sig->add_option("knot", name)->required();
    sig->add_option("--csv", csv, "write the arc table as CSV");
    auto* r0 = app.add_subcommand("rho0", "integral of the signature function");
    r0->add_option("knot", name)->required();
    r0->add_option("--tol", tol, "absolute tolerance");
    auto* arf_cmd = app.add_subcommand("arf", "Arf invariant");
    arf_cmd->add_option("knot", name)->required();
    auto* subs = app.add_subcommand("submodules", "isotropic submodules of the Alexander module");
    subs->add_option("knot", name)->required();
    auto* fos = app.add_subcommand("fos", "first-order signatures");
    fos->add_option("target", name, "knot or build")->required();
    auto* ds = app.add_subcommand("dseries", "derived series depth of a free group word");
    ds->add_option("word", word)->required();
    ds->add_option("--rank", rank, "rank of the free group")->required();
    ds->add_option("--max", max, "largest depth to test")->check(CLI::Range(1, kMaxDerivedDepth));
    auto* solv = app.add_subcommand("solvable", "upper bound on the solvable filtration level");
    solv->add_option("build", name)->required();
    auto* verd = app.add_subcommand("verdict", "slice obstruction verdict");
    verd->add_option("build", name)->required();
    auto* exp = app.add_subcommand("expand", "clone expansion of an R-doubling tower");
    exp->add_option("build", name)->required();
    exp->add_option("--level", level, "expansion level")->required();
    auto* canon = app.add_subcommand("canon", "canonical form of a build");
    canon->add_option("build", name)->required();

    for (auto* s : app.get_subcommands({}))
        s->add_flag("--json", c.json, "JSON output");

    RunResult res;
    std::ostringstream err;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        int rc = app.exit(e, o, err);
        res.out = o.str();
        res.err = err.str();
        res.exit_code = rc == 0 ? kExitOk : kExitInput;
        return res;
    }

    try {
        c.doc = doc_path.empty() ? builtin_document() : load_document(doc_path);
        if (alex->parsed())
            cmd_alex(c, name);
        else if (sig->parsed())
            cmd_sig(c, name, csv);
        else if (r0->parsed())
            cmd_rho0(c, name, tol);
        else if (arf_cmd->parsed())
            cmd_arf(c, name);
        else if (subs->parsed())
            cmd_submodules(c, name);
        else if (fos->parsed())
            cmd_fos(c, name);
        else if (ds->parsed())
            cmd_dseries(c, word, rank, max);
        else if (solv->parsed())
            cmd_solvable(c, name);
        else if (verd->parsed())
            cmd_verdict(c, name);
        else if (exp->parsed())
            cmd_expand(c, name, level);
        else if (canon->parsed())
            cmd_canon(c, name);
        res.exit_code = c.code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        res.exit_code = kExitInput;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        res.exit_code = kExitResource;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        res.exit_code = kExitResource;
    }
    if (res.exit_code == kExitOk || res.exit_code == kExitHypothesis)
        res.out = c.out.str();
    res.err = err.str();
    return res;
}

} // namespace knotconc
