#include "nilgeom/fuzz.hpp"
#include "nilgeom/hermitian.hpp"
#include "nilgeom/notation.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

namespace {

KForm f(const char* text, int dim = 4) { return parse_form(text, dim); }

const LieAlgebra& kt()
{
    static const LieAlgebra l = parse_salamon("(0,0,0,12)");
    return l;
}

Matrix diagonal(std::vector<Scalar> d)
{
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

} // namespace

TEST_CASE("inner products validate their matrix", "[hermitian][errors]")
{
    CHECK_THROWS_AS(InnerProduct(diagonal({1, -1})), DegenerateMetric);
    CHECK_THROWS_AS(InnerProduct(diagonal({1, 0})), DegenerateMetric);
    Matrix asym = Matrix::identity(2);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(InnerProduct(asym), DegenerateMetric);
    CHECK_THROWS_AS(InnerProduct(Matrix::identity(2), 2), InvalidParameter);
}

TEST_CASE("Hodge star on Euclidean R^4", "[hermitian]")
{
    const LieAlgebra l = abelian(4);
    const InnerProduct g = InnerProduct::euclidean(4);
    CHECK(hodge_star(l, g, f("e12")) == f("e34"));
    CHECK(hodge_star(l, g, KForm::constant(4, 1)) == f("e1234"));
    CHECK(hodge_star(l, g, f("e1234")) == KForm::constant(4, 1));
    CHECK(hodge_star(l, g, f("e123")) == f("x4"));
    CHECK(volume_form(l, g) == f("e1234"));
    const InnerProduct flipped(Matrix::identity(4), -1);
    CHECK(hodge_star(l, flipped, f("e12")) == -f("e34"));
}

TEST_CASE("a ^ *b = <a,b> vol for random metrics", "[hermitian][property]")
{
    fuzz::Generator gen(51);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = gen.uniform(1, 5);
        const InnerProduct g = gen.metric(n);
        const LieAlgebra l = abelian(n);
        const int k = gen.uniform(0, n);
        const KForm a = gen.form(n, k), b = gen.form(n, k);
        const KForm lhs = wedge(a, hodge_star(l, g, b));
        const KForm rhs = form_inner_product(g, a, b) * volume_form(l, g);
        CHECK((lhs == rhs || (lhs.is_zero() && rhs.is_zero())));
        CHECK(form_inner_product(g, a, b) == form_inner_product(g, b, a));
    }
}

TEST_CASE("Hodge star needs a rational volume; the codifferential does not", "[hermitian]")
{
    const InnerProduct g(diagonal({2, 1, 1, 1}));
    CHECK_THROWS_AS(hodge_star(kt(), g, f("e12")), IrrationalVolume);
    const KForm delta = codifferential(kt(), g, f("e12+e34"));
    fuzz::Generator gen(52);
    for (int trial = 0; trial < 20; ++trial) {
        const KForm a = gen.form(4, 1);
        CHECK(form_inner_product(g, ce_d(kt(), a), f("e12+e34")) == form_inner_product(g, a, delta));
    }
}

TEST_CASE("codifferential examples", "[hermitian]")
{
    const InnerProduct g = InnerProduct::euclidean(4);
    CHECK(codifferential(kt(), g, KForm::constant(4, 5)).is_zero());
    CHECK(codifferential(kt(), g, f("e12+e34")) == f("x4"));
    fuzz::Generator gen(53);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(codifferential(abelian(4), g, gen.form(4, gen.uniform(0, 4))).is_zero());
    CHECK_THROWS_AS(codifferential(parse_salamon("(0,-12)"), InnerProduct::euclidean(2), f("x2", 2)),
                    NotUnimodular);
}

TEST_CASE("Kaehler and Lee forms", "[hermitian]")
{
    const InnerProduct g = InnerProduct::euclidean(4);
    const auto j = AlmostComplexStructure::standard(4);
    CHECK(kahler_form(g, j) == f("e12+e34"));
    CHECK(is_compatible(g, j));
    const KForm theta = lee_form(kt(), g, j);
    CHECK(theta == f("-x3"));
    const KForm omega = kahler_form(g, j);
    CHECK(ce_d(kt(), omega) == wedge(theta, omega));
    CHECK(lee_form(abelian(4), g, j).is_zero());

    const InnerProduct skewed(diagonal({1, 2, 1, 1}));
    CHECK_FALSE(is_compatible(skewed, j));
    CHECK_THROWS_AS(lee_form(kt(), skewed, j), NotHermitian);
    CHECK_THROWS_AS(lee_form(abelian(2), InnerProduct::euclidean(2), AlmostComplexStructure::standard(2)),
                    WrongDimension);
}

TEST_CASE("Levi-Civita connection of Kodaira-Thurston", "[hermitian]")
{
    const InnerProduct g = InnerProduct::euclidean(4);
    const auto nabla = koszul_connection(kt(), g);
    CHECK(nabla.nabla(1, 2) == Vector{0, 0, 0, Scalar(-1) / 2});
    CHECK(nabla.nabla(1, 4) == Vector{0, Scalar(1) / 2, 0, 0});
    for (int i = 1; i <= 4; ++i)
        CHECK(nabla.nabla(i, 3) == Vector{0, 0, 0, 0});
    const auto flat = koszul_connection(abelian(3), InnerProduct::euclidean(3));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            CHECK(flat.nabla(i, j) == Vector{0, 0, 0});
    CHECK(is_parallel(nabla, f("x3")));
    CHECK_FALSE(is_parallel(nabla, f("e12+e34")));
}

TEST_CASE("Levi-Civita connection is torsion-free and metric", "[hermitian][property]")
{
    fuzz::Generator gen(54);
    for (int trial = 0; trial < 40; ++trial) {
        const LieAlgebra l = gen.nilpotent(2, 5);
        const int n = l.dim();
        const InnerProduct g = gen.metric(n);
        const auto nabla = koszul_connection(l, g);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const Vector xi = l.basis_vector(i), xj = l.basis_vector(j);
                const Vector br = l.bracket(xi, xj);
                for (int k = 1; k <= n; ++k)
                    CHECK(nabla.gamma(i, j, k) - nabla.gamma(j, i, k) == br[static_cast<std::size_t>(k - 1)]);
                for (int m = 1; m <= n; ++m) {
                    const Vector xm = l.basis_vector(m);
                    CHECK(g(nabla.covariant(xi, xj), xm) + g(xj, nabla.covariant(xi, xm)) == 0);
                }
            }
    }
}

TEST_CASE("Hermitian classification", "[hermitian]")
{
    const InnerProduct g = InnerProduct::euclidean(4);
    const auto j = AlmostComplexStructure::standard(4);

    const auto torus = classify_hermitian(abelian(4), g, j);
    CHECK(torus.label() == "kahler");
    CHECK(torus.flags.kahler);
    CHECK_FALSE(torus.flags.vaisman);
    CHECK(torus.kahler_form_parallel);

    const auto k = classify_hermitian(kt(), g, j);
    CHECK(k.integrable);
    CHECK(k.flags.lck);
    CHECK(k.flags.vaisman);
    CHECK_FALSE(k.flags.kahler);
    CHECK_FALSE(k.flags.gck);
    CHECK_FALSE(k.lee_exact);
    CHECK(k.lee_form == f("-x3"));
    CHECK(k.label() == "vaisman");

    const auto scaled = classify_hermitian(kt(), g.scaled(4), j);
    CHECK(scaled.flags.kahler == k.flags.kahler);
    CHECK(scaled.flags.lck == k.flags.lck);
    CHECK(scaled.flags.gck == k.flags.gck);
    CHECK(scaled.flags.vaisman == k.flags.vaisman);

    const auto fil = classify_hermitian(parse_salamon("(0,0,12,13)"), g, j);
    CHECK_FALSE(fil.integrable);
    CHECK(fil.flags.none());
    CHECK(fil.label() == "none");
}
