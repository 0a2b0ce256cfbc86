#include "oracles.hpp"

#include "knotconc/errors.hpp"
#include "knotconc/freegroup.hpp"

#include <doctest.h>

using namespace knotconc;

namespace {

FreeWord w(const char* text, int rank) { return FreeWord::parse(text, rank); }

} // namespace

TEST_CASE("free reduction and parsing")
{
    CHECK(w("x1 x1^-1", 2).is_identity());
    CHECK(w("1", 3).is_identity());
    CHECK(w("x1 x2 x2^-1 x3", 3) == w("x1 x3", 3));
    CHECK(w("(x1 x2)^2", 2).length() == 4);
    CHECK(w("(x1 x2)^-1", 2) == w("x2^-1 x1^-1", 2));
    CHECK(w("[x1,x2]", 2) == w("x1 x2 x1^-1 x2^-1", 2));
    CHECK(w("x1^3", 1).length() == 3);
    CHECK_THROWS_AS(w("x3", 2), InputError);
    CHECK_THROWS_AS(w("[x1,", 2), InputError);
    CHECK_THROWS_AS(w("y1", 2), InputError);
    CHECK_THROWS_AS(FreeWord(2, {{3, 1}}), InputError);
}

TEST_CASE("group operations")
{
    const auto a = w("x1 x2^-1 x3", 3);
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.pow(0).is_identity());
    CHECK(a.pow(-2) == a.inverse() * a.inverse());
    CHECK(commutator(a, a).is_identity());
    CHECK(commutator(w("x1", 2), w("x2", 2)) == w("[x1,x2]", 2));
    CHECK(w(a.str().c_str(), 3) == a);
}

TEST_CASE("bing substitution and curves")
{
    CHECK(bing_substitute(w("x1", 1)) == w("[x1,x2]", 2));
    CHECK(bing_substitute(w("[x1,x2]", 2)) == w("[[x1,x2],[x3,x4]]", 4));
    CHECK(bing_curve(1) == w("[x1,x2]", 2));
    CHECK(bing_curve(2) == w("[[x1,x2],[x3,x4]]", 4));
    CHECK(bing_curve(3).rank() == 8);
    CHECK_THROWS_AS(bing_curve(6), ResourceError);
}

TEST_CASE("magnus model is a homomorphism")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto a = oracle::random_word(rng, 3, 6);
        const auto b = oracle::random_word(rng, 3, 6);
        for (int n = 0; n <= 2; ++n) {
            CHECK(magnus_embed(a * b, n) == magnus_embed(a, n) * magnus_embed(b, n));
            CHECK(magnus_embed(a.inverse(), n) == magnus_embed(a, n).inverse());
        }
    }
    CHECK(magnus_embed(w("[x1,x2]", 2), 0).is_identity());
    CHECK_FALSE(magnus_embed(w("[x1,x2]", 2), 1).is_identity());
}

TEST_CASE("derived depths")
{
    CHECK(derived_depth(w("x1", 2), 5) == DepthResult{0, false});
    CHECK(derived_depth(w("x1 x2 x1^-1", 2), 5) == DepthResult{0, false});
    CHECK(derived_depth(w("[x1,x2]", 2), 5) == DepthResult{1, false});
    CHECK(derived_depth(w("[x1,x2]^3", 2), 5) == DepthResult{1, false});
    // lower central, not derived
    CHECK(derived_depth(w("[x1,[x1,x2]]", 2), 5) == DepthResult{1, false});
    CHECK(derived_depth(w("[[x1,x2],[x3,x4]]", 4), 5) == DepthResult{2, false});
    CHECK(derived_depth(w("[[x1,x2],[x1,x2^-1]]", 2), 5) == DepthResult{2, false});
    CHECK(derived_depth(bing_curve(3), 5) == DepthResult{3, false});
    CHECK(derived_depth(bing_curve(3), 2) == DepthResult{2, true});
    CHECK(derived_depth(w("1", 2), 4) == DepthResult{4, true});
    CHECK(DepthResult{2, true}.str() == ">= 2");
}

TEST_CASE("derived depth limits")
{
    CHECK_THROWS_AS(derived_depth(w("[x1,x2]", 2), 6), ResourceError);
    CHECK_THROWS_AS(derived_depth(bing_curve(3), 3, 10), ResourceError);
}
