#include "nilgeom/catalog.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

TEST_CASE("catalog entries", "[catalog]")
{
    const auto kt = get_example("kodaira_thurston");
    const ExpectedFact* b1 = kt.fact("b1");
    REQUIRE(b1);
    CHECK(b1->value == "3");
    CHECK(b1->provenance == Provenance::Stated);

    CHECK(get_example("torus4").algebra.is_abelian());

    const auto fil = get_example("filiform_0_0_12_13");
    REQUIRE(fil.fact("betti"));
    CHECK(fil.fact("betti")->value == "1,2,2,2,1");
    CHECK(fil.fact("twisted_primitive:(e13+e42,x2)")->value == "x4");
    const ExpectedFact* nocx = fil.fact("admits no complex structure");
    REQUIRE(nocx);
    CHECK_FALSE(nocx->machine_checkable());
    CHECK(nocx->provenance == Provenance::DocumentedOnly);
    CHECK_FALSE(fil.hermitian.has_value());

    CHECK(get_example("six_dim_example").algebra.dim() == 6);
    CHECK_THROWS_AS(get_example("klein_bottle"), UnknownName);
}

TEST_CASE("every machine-checkable fact reproduces", "[catalog]")
{
    for (const auto& name : catalog_names()) {
        const auto entry = get_example(name);
        CHECK(entry.name == name);
        for (const auto& fact : entry.expected)
            if (fact.machine_checkable()) {
                INFO(name << ": " << fact.name);
                CHECK(fact.recompute(entry.algebra) == fact.value);
            }
    }
}

TEST_CASE("catalog lookup by structure", "[catalog]")
{
    const auto hit = find_in_catalog(parse_salamon("(0,0,0,12)"));
    REQUIRE(hit);
    CHECK(hit->name == "kodaira_thurston");
    CHECK_FALSE(find_in_catalog(parse_salamon("(0,0,12)")).has_value());
}

TEST_CASE("Heisenberg line family", "[catalog]")
{
    const LieAlgebra h2 = heisenberg_line(2);
    CHECK(format_salamon(h2) == "(0,0,0,12)");
    CHECK(h2 == get_example("kodaira_thurston").algebra);
    CHECK(h2.labels() == std::vector<std::string>{"X1", "Y1", "T", "Z"});
    // [X1, Y1] = -Z
    CHECK(h2.bracket(h2.basis_vector(1), h2.basis_vector(2)) == Vector{0, 0, 0, -1});

    const LieAlgebra h3 = heisenberg_line(3);
    CHECK(h3.dim() == 6);
    CHECK(CohomologySpace(h3, 1).betti() == 5);
    CHECK(h3.d_covector(6) == KForm::monomial(6, {1, 2}) + KForm::monomial(6, {3, 4}));

    for (int n = 2; n <= 6; ++n) {
        const LieAlgebra h = heisenberg_line(n);
        CHECK(h.dim() == 2 * n);
        CHECK(lower_central_series(h).step == 2);
        CHECK(CohomologySpace(h, 1).betti() == 2 * n - 1);
    }
    CHECK_THROWS_AS(heisenberg_line(1), InvalidParameter);
    CHECK_THROWS_AS(heisenberg_line(-3), InvalidParameter);
}
