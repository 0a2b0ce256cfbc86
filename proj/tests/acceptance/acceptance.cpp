// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "oracles.hpp"
#include "properties.hpp"

#include "knotconc/document.hpp"
#include "knotconc/verdict.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace knotconc;
using oracle::lp;

namespace {

// Collects the reasons a criterion failed.
struct Check {
    std::vector<std::string> problems;
    void expect(bool ok, const std::string& what)
    {
        if (!ok)
            problems.push_back(what);
    }
};

const Document& examples()
{
    static const Document doc = load_document(KNOTCONC_DATA_DIR "/examples.json");
    return doc;
}

SeifertMatrix seifert(const std::string& name) { return *examples().knot(name)->seifert; }

RhoTerm r0(const std::string& k) { return RhoAtom::rho0(k); }
RhoTerm r1(const std::string& k) { return RhoAtom::rho1(k); }

std::multiset<RhoTerm> fos_of(const NodePtr& n)
{
    const auto t = first_order_signatures(n, examples().context()).terms();
    return {t.begin(), t.end()};
}

bool at_level(const SolvDegree& d, int n) { return d.is_finite() && d.twice_level == 2 * n; }

void alexander_data(Check& c)
{
    const auto e89 = seifert("eight9");
    const auto pq = lp("(t^3 - 2t^2 + t - 1)(t^3 - t^2 + 2t - 1)");
    c.expect(associates(alexander_poly(e89), pq), "Delta(8_9)");
    const AlexModule m(e89);
    c.expect(m.is_cyclic() && m.rank() == 1 && associates(m.order(), pq), "8_9 module cyclic of order pq");

    const auto n946 = seifert("nine46");
    c.expect(associates(alexander_poly(n946), lp("(t - 2)(2t - 1)")), "Delta(9_46)");
    const AlexModule n(n946);
    std::set<LaurentPoly> primes;
    for (const auto& s : n.primary_decomposition())
        primes.insert(s.prime);
    c.expect(primes == std::set<LaurentPoly>{lp("t - 2"), lp("2t - 1")}, "9_46 splits as two cyclic summands");
}

void isotropy(Check& c)
{
    const std::vector<std::tuple<std::string, std::vector<std::pair<LaurentPoly, int>>, std::set<std::string>>> cases{
        {"nine46", {{lp("t - 2"), 1}, {lp("2t - 1"), 1}}, {"0", "<alpha>", "<beta>"}},
        {"eight9", {{lp("t^3 - 2t^2 + t - 1"), 1}, {lp("t^3 - t^2 + 2t - 1"), 1}}, {"0", "<p>", "<q>"}},
    };
    for (const auto& [name, primes, labels] : cases) {
        oracle::Stopwatch sw;
        const auto& rec = *examples().knot(name);
        const AlexModule m(*rec.seifert);
        const auto subs = isotropic_submodules(m);
        std::set<std::string> got;
        for (const auto& p : subs)
            got.insert(submodule_label(rec, m, p));
        c.expect(subs.size() == 3, name + " has 3 isotropic submodules");
        c.expect(got == labels, name + " submodule labels");
        c.expect(oracle::library_isotropic_divisors(m) == oracle::isotropic_divisors(primes),
                 name + " agrees with the divisor-lattice oracle");
        c.expect(sw.seconds() < 1.0, name + " under 1 s");
    }
}

void rho0_certification(Check& c)
{
    const Rational tol(1, 1000000000);
    const auto tre = rho0(seifert("trefoil"), tol);
    c.expect(tre.lo() >= Rational(-4, 3) - tol && tre.hi() <= Rational(-4, 3) + tol,
             "rho0(trefoil) within 1e-9 of -4/3");
    const double riemann = oracle::riemann_rho0(seifert("trefoil").entries(), 1000000);
    std::ostringstream os;
    os << "Riemann oracle " << riemann << " agrees within 1e-4";
    c.expect(std::abs(riemann - tre.mid.get_d()) < 1e-4, os.str());
    const auto fig = rho0(seifert("figure8"), tol);
    c.expect(fig.exact() && fig.mid == 0, "rho0(figure8) = 0 exactly");
}

void first_order_signature_sets(Check& c)
{
    const auto& d = examples();
    c.expect(fos_of(d.target("highersigs")) ==
                 std::multiset<RhoTerm>{r1("nine46") + r0("K1") + r0("K2"), r0("K2"), r0("K1")},
             "9_46 infection FOS set");
    c.expect(fos_of(d.target("eight9")) == std::multiset<RhoTerm>{RhoTerm(), RhoTerm(), RhoTerm()},
             "8_9 FOS set {0, 0, 0}");
    c.expect(fos_of(d.target("eight9_infected")) ==
                 std::multiset<RhoTerm>{Rational(2) * r0("K1"), r0("K1"), Rational(2) * r0("K1")},
             "8_9 infection FOS set");
}

void derived_depths(Check& c)
{
    c.expect(derived_depth(FreeWord::parse("[x1,x2]", 2), 5) == DepthResult{1, false}, "[x, y] has depth 1");
    c.expect(derived_depth(FreeWord::parse("[[x1,x2],[x3,x4]]", 4), 5) == DepthResult{2, false},
             "[[x, x'], [y, y']] has depth 2");
    c.expect(derived_depth(bing_curve(3), 5) == DepthResult{3, false}, "bing curve of rank 8 has depth 3");
    const auto r = props::derived_series_properties(500, 14);
    c.expect(r.ok(), "derived series property suite: " + r.str());
}

void solvability(Check& c)
{
    const auto& d = examples();
    for (int n = 1; n <= 3; ++n) {
        const auto j1 = d.target("J1");
        c.expect(at_level(solvability_upper_bound(bing_double(j1, n)), n + 1),
                 "BD^" + std::to_string(n) + "(J_1) is (" + std::to_string(n + 1) + ")-solvable");
        c.expect(at_level(solvability_upper_bound(d.target("J" + std::to_string(n))), n),
                 "J_" + std::to_string(n) + " is (" + std::to_string(n) + ")-solvable");
    }
    const auto j3 = d.target("J3");
    for (int i = 0; i <= 3; ++i) {
        const auto e = expand_clones(j3, i);
        c.expect(at_level(solvability_upper_bound(e), 3), "clone expansion " + std::to_string(i) + " keeps the bound");
        const std::size_t slots = i == 0 ? 1 : e->children.size();
        c.expect(slots == (std::size_t{1} << i), "clone expansion " + std::to_string(i) + " has 2^i slots");
    }
}

void verdicts(Check& c)
{
    const auto& d = examples();
    const auto ctx = d.context();
    const auto a = bing_obstruction(d.target("eight9_infected"), ctx, d.axioms);
    c.expect(a.conclusion == Conclusion::NotSlice && a.sound(), "8_9 infection is NOT_SLICE");

    const auto b = bing_obstruction(d.target("highersigs_equal"), ctx, d.axioms);
    const std::vector<RhoTerm> residual{RhoTerm(), Rational(-1, 2) * r1("nine46")};
    c.expect(b.conclusion == Conclusion::NotSliceConditional && b.residual &&
                 b.residual->subject == RhoAtom::rho0("K") && b.residual->excluded == residual,
             "9_46 infection with equal infectants has residual {0, -1/2 rho1(9_46)}");

    // J_m under k-fold Bing doubling: bound k + m
    for (int m = 1; m <= 2; ++m)
        for (int k = 1; k <= 2; ++k) {
            const auto tower = bing_double(d.target("J" + std::to_string(m)), k);
            for (int mult = 1; mult <= 3; ++mult) {
                const auto tree = mult == 1 ? tower : multiple(tower, mult);
                const auto v = doubling_operator_verdict(tree, ctx);
                const std::string tag = "BD^" + std::to_string(k) + "(J_" + std::to_string(m) + ") x" +
                                        std::to_string(mult);
                c.expect(v.conclusion == Conclusion::NotSliceConditional, tag + " conclusion");
                c.expect(v.solvable_bound && at_level(*v.solvable_bound, k + m), tag + " SOLVABLE_UPPER_BOUND");
                c.expect(v.condition == "|rho0(J0)| > C", tag + " condition");
                c.expect(v.transcript().find("SOLVABLE_UPPER_BOUND(" + std::to_string(k + m) + ")") !=
                             std::string::npos,
                         tag + " transcript");
            }
        }
    for (const char* name : {"bing_tower", "bing_tower_x2", "bing_tower_x3"}) {
        const auto v = doubling_operator_verdict(d.target(name), ctx);
        c.expect(v.solvable_bound && at_level(*v.solvable_bound, 3) && v.condition == "|rho0(J0)| > C",
                 std::string(name) + " verdict");
    }
}

void algebra_properties(Check& c)
{
    for (const auto& [what, r] : std::vector<std::pair<std::string, props::Report>>{
             {"blanchfield", props::blanchfield_properties(1000, 13)},
             {"alexander symmetry", props::alexander_symmetry(1000, 11)},
             {"rho0 additivity", props::connected_sum_properties(200, 15)},
         })
        c.expect(r.ok(), what + ": " + r.str());
}

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<void(Check&)> body;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"alexander data", 1, alexander_data},
        {"isotropy lattices", 2, isotropy},
        {"rho0 certification", 10, rho0_certification},
        {"first-order signature sets", 1, first_order_signature_sets},
        {"derived depths", 60, derived_depths},
        {"solvability bookkeeping", 1, solvability},
        {"verdicts", 5, verdicts},
        {"algebra property suites", 120, algebra_properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& cr = criteria[i];
        Check c;
        oracle::Stopwatch sw;
        try {
            cr.body(c);
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("exception: ") + e.what());
        }
        const double secs = sw.seconds();
        if (secs > cr.budget_seconds)
            c.problems.push_back("took longer than " + std::to_string(cr.budget_seconds) + " s");
        const bool ok = c.problems.empty();
        failed += ok ? 0 : 1;
        std::printf("%s %zu %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, cr.name, secs);
        for (const auto& p : c.problems)
            std::printf("    %s\n", p.c_str());
    }
    return failed == 0 ? 0 : 1;
}
