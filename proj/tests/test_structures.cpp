#include "oracles.hpp"

#include "nilgeom/fuzz.hpp"
#include "nilgeom/notation.hpp"
#include "nilgeom/structures.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

namespace {

KForm f(const char* text, int dim = 4) { return parse_form(text, dim); }

const LieAlgebra& kt()
{
    static const LieAlgebra l = parse_salamon("(0,0,0,12)");
    return l;
}

const LieAlgebra& filiform()
{
    static const LieAlgebra l = parse_salamon("(0,0,12,13)");
    return l;
}

/// omega^n / n! as a multiple of the volume monomial.
Scalar top_coefficient(const KForm& omega)
{
    const int n = omega.dim() / 2;
    Scalar factorial = 1;
    for (int i = 2; i <= n; ++i)
        factorial *= i;
    return wedge_power(omega, n).coefficient(Monomial((std::uint64_t{1} << omega.dim()) - 1)) / factorial;
}

Vector nijenhuis_oracle(const LieAlgebra& l, const Matrix& j, int a, int b)
{
    const Vector x = l.basis_vector(a), y = l.basis_vector(b);
    const Vector jx = j * x, jy = j * y;
    const Vector p = l.bracket(jx, jy), q = j * l.bracket(jx, y), r = j * l.bracket(x, jy), s = l.bracket(x, y);
    Vector out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
        out[k] = p[k] - q[k] - r[k] - s[k];
    return out;
}

} // namespace

TEST_CASE("Pfaffian agrees with cofactor expansion and squares to det", "[structures][property]")
{
    fuzz::Generator gen(41);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 * gen.uniform(0, 4);
        const Matrix a = gen.skew(n);
        const Scalar pf = pfaffian(a);
        CHECK(pf == oracle::pfaffian(a));
        CHECK(pf * pf == oracle::determinant(a));
    }
    CHECK(pfaffian(gen.skew(3)) == 0);
}

TEST_CASE("Pfaffian volume", "[structures]")
{
    CHECK(pfaffian_volume(abelian(4), f("e12+e34")) == 1);
    CHECK(pfaffian_volume(filiform(), f("e13+e42")) == 1);
    CHECK(pfaffian_volume(abelian(4), f("e12")) == 0);
    CHECK(pfaffian_volume(kt(), f("e14+e23")) == 1);
    CHECK_THROWS_AS(pfaffian_volume(parse_salamon("(0,0,12)"), KForm(3, 2)), OddDimension);

    fuzz::Generator gen(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 * gen.uniform(1, 3);
        const KForm omega = gen.form(n, 2);
        CHECK(pfaffian_volume(abelian(n), omega) == top_coefficient(omega));
    }
}

TEST_CASE("check_symplectic", "[structures]")
{
    CHECK(check_symplectic(kt(), f("e14+e23")).symplectic());
    CHECK(check_symplectic(filiform(), f("e14+e23")).symplectic());
    const auto v = check_symplectic(filiform(), f("e13+e42"));
    CHECK_FALSE(v.closed);
    CHECK(v.volume == 1);
    CHECK_FALSE(v.symplectic());
}

TEST_CASE("find_symplectic", "[structures]")
{
    const auto torus = find_symplectic(abelian(4));
    REQUIRE(torus.witness);
    CHECK(check_symplectic(abelian(4), *torus.witness).symplectic());
    CHECK(torus.certain);

    const LieAlgebra six = parse_salamon("(0,0,0,0,12,34)");
    const auto s6 = find_symplectic(six);
    REQUIRE(s6.witness);
    CHECK(check_symplectic(six, *s6.witness).symplectic());
    // e15+e26+e34 is nondegenerate but d(e26) = -e234, so it is not closed
    CHECK(ce_d(six, f("e15+e26+e34", 6)) == -f("e234", 6));
    CHECK(check_symplectic(six, f("e15+e24+e36", 6)).symplectic());

    for (const char* closed : {"e12", "e13"})
        CHECK(pfaffian_volume(abelian(4), f(closed)) == 0);
    const auto none = find_nondegenerate_in_span(4, {f("e12"), f("e13")});
    CHECK_FALSE(none.witness);
    CHECK(none.certain);
    CHECK(pfaffian_polynomial(4, {f("e12"), f("e13")}).is_zero());

    // so(3) + R: Z^2 = span{e12, e13, e23}, every element degenerate
    const LieAlgebra so3r = parse_salamon("(23,-13,12,0)");
    CHECK(CohomologySpace(so3r, 2).cocycle_basis().size() == 3);
    CHECK_FALSE(find_symplectic(so3r).witness);
    CHECK_THROWS_AS(find_symplectic(parse_salamon("(0,0,12)")), OddDimension);
}

TEST_CASE("randomized nondegeneracy search above the symbolic bound", "[structures]")
{
    std::vector<KForm> basis;
    for (int i = 1; i <= 10; i += 2)
        basis.push_back(KForm::monomial(10, {i, i + 1}));
    const auto found = find_nondegenerate_in_span(10, basis);
    REQUIRE(found.witness);
    CHECK(pfaffian(skew_matrix(*found.witness)) != 0);
}

TEST_CASE("check_lcs", "[structures]")
{
    const auto v = check_lcs(filiform(), f("e13+e42"), f("x2"));
    CHECK(v.is_almost_symplectic);
    CHECK(v.lee_closed);
    CHECK(v.identity_holds);
    CHECK(v.genuine);
    CHECK(v.witness_volume == 1);
    CHECK(v.is_lcs());

    const auto gcs = check_lcs(kt(), f("e14+e23"), KForm(4, 1));
    CHECK(gcs.is_lcs());
    CHECK_FALSE(gcs.genuine);

    const auto wrong = check_lcs(filiform(), f("e13+e42"), f("x1"));
    CHECK_FALSE(wrong.identity_holds);
    CHECK(wrong.d_omega != wrong.theta_wedge_omega);

    CHECK_THROWS_AS(check_lcs(parse_salamon("(0,0,12)"), KForm(3, 2), KForm(3, 1)), OddDimension);
    CHECK_THROWS_AS(check_lcs(abelian(2), f("e12", 2), KForm(2, 1)), WrongDimension);
}

TEST_CASE("find_lcs", "[structures]")
{
    SearchConfig cfg;
    cfg.height_bound = 1;
    const auto r = find_lcs(filiform(), cfg);
    REQUIRE(r.found());
    CHECK(r.label() == "FOUND");
    CHECK(r.witness->theta == f("x2"));
    const auto v = check_lcs(filiform(), r.witness->omega, r.witness->theta);
    CHECK(v.is_lcs());
    CHECK(v.genuine);

    const auto torus = find_lcs(abelian(4), cfg);
    CHECK_FALSE(torus.found());
    CHECK(torus.label() == "NOT_FOUND_UP_TO_HEIGHT(1)");
    REQUIRE(torus.gcs_symplectic);
    CHECK(check_symplectic(abelian(4), *torus.gcs_symplectic).symplectic());

    cfg.height_bound = 0;
    const auto empty = find_lcs(filiform(), cfg);
    CHECK_FALSE(empty.found());
    CHECK(empty.candidates_examined == 0);
    CHECK(empty.label() == "NOT_FOUND_UP_TO_HEIGHT(0)");

    cfg.height_bound = 2;
    cfg.max_candidates = 5;
    const auto truncated = find_lcs(abelian(4), cfg);
    CHECK(truncated.truncated);
    CHECK(truncated.candidates_examined == 5);

    cfg.height_bound = -1;
    CHECK_THROWS_AS(find_lcs(abelian(4), cfg), InvalidParameter);
}

TEST_CASE("find_lcs is deterministic", "[structures]")
{
    const auto a = find_lcs(kt());
    const auto b = find_lcs(kt());
    REQUIRE(a.found());
    CHECK(a.witness->omega == b.witness->omega);
    CHECK(a.witness->theta == b.witness->theta);
    CHECK(a.candidates_examined == b.candidates_examined);
}

TEST_CASE("twisted exactness witness", "[structures]")
{
    const auto eta = twisted_exactness_witness(filiform(), f("e13+e42"), f("x2"));
    REQUIRE(eta);
    CHECK(*eta == f("x4"));
    CHECK_FALSE(twisted_exactness_witness(abelian(4), f("e12+e34"), KForm(4, 1)).has_value());
    CHECK_THROWS_AS(twisted_exactness_witness(filiform(), f("e13+e42"), f("x1")), PreconditionFailed);

    fuzz::Generator gen(43);
    int recovered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const KForm eta0 = gen.form(4, 1, 3, 0.7);
        const KForm omega = twisted_d(filiform(), f("x2"), eta0);
        const auto got = twisted_exactness_witness(filiform(), omega, f("x2"));
        REQUIRE(got);
        CHECK(twisted_d(filiform(), f("x2"), *got) == omega);
        ++recovered;
    }
    CHECK(recovered == 100);
}

TEST_CASE("Nijenhuis tensor", "[structures]")
{
    const auto j = AlmostComplexStructure::standard(4);
    CHECK(j.matrix()(1, 0) == 1);
    CHECK(j.matrix()(0, 1) == -1);
    CHECK(nijenhuis(kt(), j).integrable);
    CHECK(nijenhuis(abelian(4), j).integrable);
    const auto n = nijenhuis(filiform(), j);
    CHECK_FALSE(n.integrable);
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b)
            CHECK(n.at(a, b) == nijenhuis_oracle(filiform(), j.matrix(), a, b));

    Matrix bad = Matrix::identity(4);
    CHECK_THROWS_AS(AlmostComplexStructure(bad), NotAlmostComplex);
    CHECK_THROWS_AS(nijenhuis(parse_salamon("(0,0,0,0,12,34)"), j), DimensionMismatch);
}

TEST_CASE("sampled almost complex structures on (0,0,12,13) are never integrable", "[structures][property]")
{
    fuzz::Generator gen(44);
    const Matrix j0 = AlmostComplexStructure::standard(4).matrix();
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix p = gen.invertible(4, true);
        const AlmostComplexStructure j(p * j0 * *inverse(p));
        const auto n = nijenhuis(filiform(), j);
        CHECK_FALSE(n.integrable);
        CHECK(n.at(1, 2) == nijenhuis_oracle(filiform(), j.matrix(), 1, 2));
        // on the abelian algebra the same J is always integrable
        CHECK(nijenhuis(abelian(4), j).integrable);
    }
}

TEST_CASE("classify_4d", "[structures]")
{
    const auto t = classify_4d(abelian(4));
    CHECK(t.kind == FourDimClass::Torus);
    CHECK(t.kahler_admissible);
    const auto k = classify_4d(kt());
    CHECK(k.kind == FourDimClass::KodairaThurstonType);
    CHECK_FALSE(k.kahler_admissible);
    const auto fl = classify_4d(filiform());
    CHECK(fl.kind == FourDimClass::FiliformType);
    CHECK(fl.standard_symplectic == f("e14+e23"));
    CHECK(fl.standard_form_symplectic_on_input);
    CHECK(to_string(fl.kind) == "filiform_type");

    fuzz::Generator gen(45);
    for (int trial = 0; trial < 20; ++trial) {
        const LieAlgebra scrambled = change_basis(filiform(), gen.invertible(4, true));
        CHECK(classify_4d(scrambled).kind == FourDimClass::FiliformType);
    }
    CHECK_THROWS_AS(classify_4d(parse_salamon("(0,0,12)")), WrongDimension);
    CHECK_THROWS_AS(classify_4d(parse_salamon("(23,-13,12,0)")), NotNilpotent);
}
