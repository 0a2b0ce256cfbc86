#include "oracles.hpp"

#include "knotconc/document.hpp"
#include "knotconc/errors.hpp"
#include "knotconc/verdict.hpp"

#include <doctest.h>

using namespace knotconc;

namespace {

const Document& examples()
{
    static const Document doc = load_document(KNOTCONC_DATA_DIR "/examples.json");
    return doc;
}

Verdict verdict_of(const std::string& build)
{
    const auto& d = examples();
    return verdict_for(d.target(build), d.context(), d.axioms);
}

NodePtr knot(const std::string& name) { return base_knot(examples().knot(name)); }

NodePtr word_infection(int components, const FreeWord& w, NodePtr k)
{
    CurveSpec c;
    c.label = "alpha";
    c.depth = DepthCertificate::from_word(w);
    return infect(trivial_link(components), {c}, {std::move(k)});
}

RhoTerm r0(const std::string& k) { return RhoAtom::rho0(k); }

} // namespace

TEST_CASE("bing obstruction with an independence axiom")
{
    const auto v = verdict_of("eight9_infected");
    CHECK(v.conclusion == Conclusion::NotSlice);
    CHECK(v.theorem == kTagBingDouble);
    CHECK(v.sound());
    CHECK_NOTHROW(check_soundness(v));
    CHECK(v.transcript().find("NOT_SLICE") != std::string::npos);
}

TEST_CASE("bing obstruction leaves a residual when the infectants agree")
{
    const auto v = verdict_of("highersigs_equal");
    CHECK(v.conclusion == Conclusion::NotSliceConditional);
    REQUIRE(v.residual.has_value());
    CHECK(v.residual->subject == RhoAtom::rho0("K"));
    const std::vector<RhoTerm> want{RhoTerm(), Rational(-1, 2) * RhoTerm(RhoAtom::rho1("nine46"))};
    CHECK(v.residual->excluded == want);
    CHECK(v.condition == "rho0(K) not in {0, -1/2 rho1(nine46)}");
}

TEST_CASE("bing obstruction with distinct infectants")
{
    const auto v = verdict_of("highersigs");
    CHECK(v.conclusion != Conclusion::NotSlice);
    CHECK(v.conclusion != Conclusion::Inconclusive);
    const auto t = verdict_of("highersigs_trefoil");
    CHECK(t.conclusion == Conclusion::NotSliceConditional);
    CHECK(t.condition.find("rho1(nine46)") != std::string::npos);
}

TEST_CASE("slice knots are inconclusive")
{
    const auto& d = examples();
    for (const char* name : {"nine46", "unknot", "eight9", "stevedore"}) {
        CAPTURE(std::string(name));
        CHECK(bing_obstruction(knot(name), d.context(), d.axioms).conclusion == Conclusion::Inconclusive);
    }
}

TEST_CASE("infection of a trivial link")
{
    const auto v = verdict_of("trivial_ex44");
    CHECK(v.conclusion == Conclusion::NotSlice);
    CHECK(v.theorem == kTagTrivialLink);
    CHECK(v.sound());
}

TEST_CASE("infection of a link assumed slice")
{
    const auto v = verdict_of("slice_ex44");
    CHECK(v.conclusion == Conclusion::NotSliceConditional);
    CHECK(v.theorem == kTagSliceLink);
    CHECK(v.condition.find("min |FOS(") != std::string::npos);
    CHECK(v.condition.find(">= C(M_T)") != std::string::npos);
    CHECK(v.sound());
}

TEST_CASE("degenerate infections are inconclusive")
{
    const auto& d = examples();
    // the curve has depth 0
    const auto shallow = word_infection(2, FreeWord::parse("x1 x2 x1^-1", 2), d.target("eight9_infected"));
    const auto v0 = infection_obstruction(shallow, d.context(), d.axioms);
    CHECK(v0.conclusion == Conclusion::Inconclusive);
    CHECK(v0.has_failed_hypothesis());
    // every first-order signature of a slice infectant contains 0
    const auto slice_inf = word_infection(2, bing_curve(1), knot("nine46"));
    CHECK(infection_obstruction(slice_inf, d.context(), d.axioms).conclusion == Conclusion::Inconclusive);
}

TEST_CASE("soundness gate")
{
    Verdict v;
    v.conclusion = Conclusion::NotSlice;
    v.hypotheses.push_back({"something assumed", HypothesisStatus::Assumed});
    CHECK_FALSE(v.sound());
    CHECK_THROWS_AS(check_soundness(v), std::logic_error);
    CHECK(v.sound_with(Conclusion::NotSliceConditional));
    v.hypotheses.back().status = HypothesisStatus::Certified;
    CHECK(v.sound());
    v.hypotheses.push_back({"something false", HypothesisStatus::Failed});
    CHECK(v.has_failed_hypothesis());
    CHECK_FALSE(v.sound());
}

TEST_CASE("bing doubles agree with infections along the bing curve")
{
    const auto& d = examples();
    const auto k = d.target("eight9_infected");
    const auto base = bing_obstruction(k, d.context(), d.axioms).conclusion;
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        const auto bd = verdict_for(bing_double(k, n), d.context(), d.axioms);
        const auto inf = verdict_for(word_infection(1 << n, bing_curve(n), k), d.context(), d.axioms);
        CHECK(bd.conclusion == base);
        CHECK(inf.conclusion == base);
    }
}

TEST_CASE("generalized doubling on the bing tower")
{
    for (const char* name : {"bing_tower", "bing_tower_x2", "bing_tower_x3"}) {
        CAPTURE(std::string(name));
        const auto v = verdict_of(name);
        CHECK(v.theorem == kTagDoubling);
        CHECK(v.conclusion == Conclusion::NotSliceConditional);
        CHECK(v.condition == "|rho0(J0)| > C");
        REQUIRE(v.solvable_bound.has_value());
        CHECK(v.solvable_bound->is_finite());
        CHECK(v.solvable_bound->twice_level == 6);
        CHECK(v.sound());
    }
}

TEST_CASE("generalized doubling on bing doubles of R-doubling towers")
{
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        const auto v = verdict_of("bd" + std::to_string(n) + "_J1");
        CHECK(v.conclusion == Conclusion::NotSliceConditional);
        REQUIRE(v.solvable_bound.has_value());
        CHECK(v.solvable_bound->twice_level == 2 * (n + 1));
        CHECK(v.condition == "|rho0(J0)| > C");
    }
}

TEST_CASE("generalized doubling fails without its hypotheses")
{
    const auto& d = examples();
    // Arf(trefoil) = 1
    const auto tre = bing_double(rdouble("R", knot("trefoil")), 1);
    const auto v1 = doubling_operator_verdict(tre, d.context());
    CHECK(v1.conclusion == Conclusion::Inconclusive);
    CHECK(v1.has_failed_hypothesis());
    // rho0 of the seed vanishes
    const auto fig = bing_double(rdouble("R", knot("figure8")), 1);
    CHECK(doubling_operator_verdict(fig, d.context()).conclusion == Conclusion::Inconclusive);
    // a knot is not a doubling pattern
    CHECK_THROWS_AS(doubling_operator_verdict(knot("K"), d.context()), InputError);
}

TEST_CASE("strengthening axioms never weakens a verdict")
{
    Document d = examples();
    const auto cond = verdict_for(d.target("highersigs_equal"), d.context(), d.axioms).conclusion;
    const auto before = verdict_for(d.target("eight9_infected"), d.context(), d.axioms).conclusion;
    d.axioms.independent.push_back({"rho0(K)", "rho1(nine46)"});
    d.axioms.independent.push_back({"rho0(K1)", "1"});
    const auto after = verdict_for(d.target("eight9_infected"), d.context(), d.axioms).conclusion;
    CHECK(before == Conclusion::NotSlice);
    CHECK(after == Conclusion::NotSlice);

    d.axioms.independent.push_back({"rho0(K)", "rho1(nine46)", "1"});
    const auto proven = verdict_for(d.target("highersigs_equal"), d.context(), d.axioms).conclusion;
    CHECK(cond == Conclusion::NotSliceConditional);
    CHECK(proven == Conclusion::NotSlice);
}

TEST_CASE("residual printing")
{
    Residual r{RhoAtom::rho0("K1"), {RhoTerm(), r0("K2")}};
    CHECK(r.str() == "rho0(K1) not in {0, rho0(K2)}");
}
