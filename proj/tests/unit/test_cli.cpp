#include "knotconc/cli.hpp"
#include "knotconc/document.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace knotconc;

namespace {

const std::string kDoc = KNOTCONC_DATA_DIR "/examples.json";

RunResult with_doc(std::vector<std::string> args)
{
    args.insert(args.begin(), {"--doc", kDoc});
    return run(args);
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

// Runs the installed binary through the shell; returns (exit code, stdout).
std::pair<int, std::string> shell(const std::string& args)
{
    const std::string cmd = std::string(KNOTCONC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), p))
        out += buf.data();
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST_CASE("alex")
{
    const auto r = run({"alex", "eight9"});
    CHECK(r.exit_code == kExitOk);
    CHECK(has(r.out, "factors: (t^3 - 2t^2 + t - 1)(t^3 - t^2 + 2t - 1)"));
    CHECK(has(r.out, "cyclic: yes"));
    CHECK(has(run({"alex", "nine46"}).out, "primary summands: 2"));
}

TEST_CASE("sig")
{
    const auto r = run({"sig", "trefoil"});
    CHECK(r.exit_code == kExitOk);
    CHECK(has(r.out, "jumps: 2"));
    CHECK(has(r.out, "0.166666667   0.833333333   -2"));
}

TEST_CASE("rho0 printing")
{
    CHECK(run({"rho0", "trefoil"}).out == "-1.333333333 ± 1e-9\n");
    CHECK(run({"rho0", "trefoil", "--tol", "1e-3"}).out == "-1.333 ± 1e-3\n");
    CHECK(run({"rho0", "figure8"}).out == "0 (exact)\n");
    CHECK(run({"rho0", "trefoil", "--tol", "0"}).exit_code == kExitInput);
    CHECK(run({"rho0", "trefoil", "--tol", "abc"}).exit_code == kExitInput);
    const auto j = Json::parse(run({"rho0", "trefoil", "--json"}).out);
    CHECK(j["rho0"] == "-1.333333333 ± 1e-9");
    CHECK(j["exact"] == false);
}

TEST_CASE("arf and opaque knots")
{
    CHECK(run({"arf", "trefoil"}).out == "Arf(trefoil) = 1\n");
    CHECK(run({"arf", "K"}).exit_code == kExitInput);
    CHECK(with_doc({"arf", "K"}).out == "Arf(K) = 0\n");
    CHECK(with_doc({"rho0", "K"}).exit_code != kExitOk);
}

TEST_CASE("submodules")
{
    const auto r = run({"submodules", "nine46"});
    CHECK(r.exit_code == kExitOk);
    CHECK(has(r.out, "isotropic submodules: 3"));
    CHECK(has(r.out, "<alpha>"));
    CHECK(has(r.out, "<beta>"));
    CHECK(has(run({"submodules", "eight9"}).out, "<q>"));
}

TEST_CASE("fos")
{
    const auto r = with_doc({"fos", "highersigs"});
    CHECK(r.exit_code == kExitOk);
    CHECK(has(r.out, "rho0(K1) + rho0(K2) + rho1(nine46)"));
    const auto j = Json::parse(with_doc({"fos", "eight9_infected", "--json"}).out);
    REQUIRE(j["signatures"].size() == 3);
    CHECK(j["signatures"][1]["term"]["text"] == "rho0(K1)");
}

TEST_CASE("dseries")
{
    CHECK(run({"dseries", "[x1,x2]", "--rank", "2"}).out == "depth = 1\n");
    CHECK(run({"dseries", "[[x1,x2],[x3,x4]]", "--rank", "4"}).out == "depth = 2\n");
    CHECK(run({"dseries", "[x1,x2]", "--rank", "2", "--max", "9"}).exit_code == kExitInput);
    CHECK(run({"dseries", "[x1,x3]", "--rank", "2"}).exit_code == kExitInput);
}

TEST_CASE("solvable")
{
    CHECK(with_doc({"solvable", "J3"}).out == "solvable: 3\n");
    CHECK(with_doc({"solvable", "bd2_J1"}).out == "solvable: 3\n");
    CHECK(with_doc({"solvable", "highersigs_trefoil"}).exit_code == kExitHypothesis);
}

TEST_CASE("verdict")
{
    const auto a = with_doc({"verdict", "eight9_infected"});
    CHECK(a.exit_code == kExitOk);
    CHECK(has(a.out, "conclusion: NOT_SLICE\n"));
    CHECK(has(a.out, "theorem: BING_DOUBLE_FOS"));

    const auto b = with_doc({"verdict", "highersigs_equal"});
    CHECK(has(b.out, "condition: rho0(K) not in {0, -1/2 rho1(nine46)}"));

    const auto c = with_doc({"verdict", "bing_tower_x3"});
    CHECK(has(c.out, "SOLVABLE_UPPER_BOUND(3)"));
    CHECK(has(c.out, "condition: |rho0(J0)| > C"));

    CHECK(with_doc({"verdict", "nine46"}).exit_code == kExitHypothesis);
    const auto j = Json::parse(with_doc({"verdict", "trivial_ex44", "--json"}).out);
    CHECK(j["conclusion"] == "NOT_SLICE");
}

TEST_CASE("expand and canon")
{
    const auto e = with_doc({"expand", "J3", "--level", "2"});
    CHECK(e.exit_code == kExitOk);
    CHECK(has(e.out, "clone slots: 4"));
    CHECK(has(e.out, "solvable: 3"));
    CHECK(with_doc({"expand", "J3", "--level", "7"}).exit_code == kExitInput);
    CHECK(with_doc({"canon", "bing_tower_x2"}).out.rfind("multiple(", 0) == 0);
}

TEST_CASE("input errors")
{
    CHECK(run({}).exit_code == kExitInput);
    CHECK(run({"frobnicate"}).exit_code == kExitInput);
    CHECK(run({"alex", "no_such_knot"}).exit_code == kExitInput);
    CHECK(run({"--doc", "/no/such/file.json", "alex", "trefoil"}).exit_code == kExitInput);
    const auto r = run({"alex", "no_such_knot"});
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("resource limits")
{
    const std::string path = "knotconc_test_small_cap.json";
    {
        std::ofstream f(path);
        f << R"({"options": {"support_cap": 8}})";
    }
    const auto r = run({"--doc", path, "dseries", "[[[x1,x2],[x3,x4]],[[x5,x6],[x7,x8]]]", "--rank", "8"});
    CHECK(r.exit_code == kExitResource);
    CHECK(has(r.err, "cap"));
    std::remove(path.c_str());
}

TEST_CASE("output is deterministic")
{
    CHECK(with_doc({"verdict", "highersigs"}).out == with_doc({"verdict", "highersigs"}).out);
    CHECK(with_doc({"fos", "highersigs", "--json"}).out == with_doc({"fos", "highersigs", "--json"}).out);
}

TEST_CASE("binary exit codes")
{
    CHECK(shell("rho0 trefoil") == std::pair<int, std::string>{0, "-1.333333333 ± 1e-9\n"});
    CHECK(shell("alex no_such_knot").first == kExitInput);
    CHECK(shell("--doc " + kDoc + " verdict nine46").first == kExitHypothesis);
}
