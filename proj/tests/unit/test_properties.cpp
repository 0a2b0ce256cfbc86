#include "properties.hpp"

#include <doctest.h>

namespace {

void expect(const props::Report& r)
{
    INFO(r.str());
    CHECK(r.ok());
}

} // namespace

TEST_CASE("alexander polynomial symmetry and normalization")
{
    expect(props::alexander_symmetry(1000, 11));
}

TEST_CASE("factorization round trip")
{
    expect(props::factor_roundtrip(1000, 12));
}

TEST_CASE("blanchfield form properties")
{
    expect(props::blanchfield_properties(1000, 13));
}

TEST_CASE("derived series properties")
{
    expect(props::derived_series_properties(500, 14));
}

TEST_CASE("connected sum additivity of rho0 and arf")
{
    expect(props::connected_sum_properties(200, 15));
}

TEST_CASE("signature function against floating eigenvalues")
{
    expect(props::signature_sampling(300, 16));
}
