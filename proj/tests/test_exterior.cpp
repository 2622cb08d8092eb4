#include "oracles.hpp"

#include "nilgeom/exterior.hpp"
#include "nilgeom/fuzz.hpp"
#include "nilgeom/scalar.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

TEST_CASE("scalars are exact rationals with canonical text", "[exterior]")
{
    const Scalar third = Scalar(1) / 3;
    CHECK(third + third + third == 1);
    CHECK(to_string(Scalar(-6) / 4) == "-3/2");
    CHECK(to_string(Scalar(5)) == "5");
    CHECK(parse_scalar("-3/2") == Scalar(-3) / 2);
    CHECK(parse_scalar("4/2") == Scalar(2));
    CHECK_FALSE(parse_scalar("1/0").has_value());
    CHECK_FALSE(parse_scalar("1.5").has_value());
    CHECK_FALSE(parse_scalar("").has_value());
    CHECK(rational_sqrt(Scalar(9) / 4) == Scalar(3) / 2);
    CHECK_FALSE(rational_sqrt(Scalar(2)).has_value());
    CHECK(height(Scalar(-7) / 3) == 7);
}

TEST_CASE("monomial basis is lexicographic with binomial size", "[exterior]")
{
    const auto basis = monomial_basis(4, 2);
    REQUIRE(basis.size() == 6);
    const std::vector<std::vector<int>> expected{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(basis[i].indices() == expected[i]);
    for (std::size_t i = 0; i + 1 < basis.size(); ++i)
        CHECK(basis[i] < basis[i + 1]);
    CHECK(monomial_basis(6, 3).size() == 20);
    CHECK(monomial_basis(5, 0).size() == 1);
    CHECK(monomial_basis(3, 4).empty());
}

TEST_CASE("wedge_sign agrees with the parity of the merging permutation", "[exterior]")
{
    const int n = 7;
    for (int ka = 0; ka <= 3; ++ka)
        for (int kb = 0; kb <= 3; ++kb)
            for (const auto& a : monomial_basis(n, ka))
                for (const auto& b : monomial_basis(n, kb)) {
                    if (a.bits() & b.bits()) {
                        CHECK(wedge_sign(a, b) == 0);
                        continue;
                    }
                    std::vector<int> word = a.indices();
                    for (int i : b.indices())
                        word.push_back(i);
                    CHECK(wedge_sign(a, b) == oracle::permutation_sign(word));
                }
}

TEST_CASE("basic wedge identities", "[exterior]")
{
    const KForm x1 = KForm::covector(4, 1);
    const KForm x2 = KForm::covector(4, 2);
    CHECK(wedge(x1, x2) == KForm::monomial(4, {1, 2}));
    CHECK(wedge(x2, x1) == -KForm::monomial(4, {1, 2}));
    CHECK(wedge(x1, x1).is_zero());
    CHECK(KForm::monomial(4, {4, 2}) == -KForm::monomial(4, {2, 4}));
    CHECK(KForm::monomial(4, {3, 3}).is_zero());

    const KForm omega = KForm::monomial(4, {1, 2}) + KForm::monomial(4, {3, 4});
    CHECK(wedge_power(omega, 2) == Scalar(2) * KForm::monomial(4, {1, 2, 3, 4}));
    CHECK(wedge_power(omega, 0) == KForm::constant(4, 1));
    CHECK(wedge_power(omega, 3).is_zero());
}

TEST_CASE("wedge is associative and bilinear on random forms", "[exterior][property]")
{
    fuzz::Generator gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = gen.uniform(1, 7);
        const int p = gen.uniform(0, n), q = gen.uniform(0, n), r = gen.uniform(0, n);
        const KForm a = gen.form(n, p), b = gen.form(n, q), c = gen.form(n, r), b2 = gen.form(n, q);
        const KForm left = wedge(wedge(a, b), c);
        const KForm right = wedge(a, wedge(b, c));
        CHECK((left == right || (left.is_zero() && right.is_zero())));
        const Scalar s = gen.rational(5);
        const KForm lin = wedge(a, s * b + b2);
        const KForm split = s * wedge(a, b) + wedge(a, b2);
        CHECK((lin == split || (lin.is_zero() && split.is_zero())));
    }
}

TEST_CASE("evaluation matches the determinant formula", "[exterior][property]")
{
    fuzz::Generator gen(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = gen.uniform(1, 5);
        const int k = gen.uniform(0, n);
        const KForm a = gen.form(n, k);
        std::vector<Vector> vs;
        for (int i = 0; i < k; ++i) {
            Vector v(static_cast<std::size_t>(n));
            for (auto& x : v)
                x = gen.rational(3);
            vs.push_back(v);
        }
        CHECK(evaluate(a, vs) == oracle::evaluate(a, vs));
    }
    const KForm e12 = KForm::monomial(3, {1, 2});
    const std::vector<Vector> v{{1, 0, 0}, {0, 1, 0}};
    CHECK(evaluate(e12, v) == 1);
}

TEST_CASE("coordinates round trip", "[exterior]")
{
    fuzz::Generator gen(13);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = gen.uniform(1, 6);
        const int k = gen.uniform(0, n);
        const KForm a = gen.form(n, k);
        const Vector c = a.to_coordinates();
        CHECK(c.size() == monomial_basis(n, k).size());
        CHECK(KForm::from_coordinates(n, k, c) == a);
    }
}

TEST_CASE("exterior errors", "[exterior][errors]")
{
    CHECK_THROWS_AS(KForm::covector(3, 4), IndexOutOfRange);
    CHECK_THROWS_AS(KForm::covector(3, 0), IndexOutOfRange);
    CHECK_THROWS_AS(wedge(KForm::covector(3, 1), KForm::covector(4, 1)), AmbientMismatch);
    CHECK_THROWS_AS(KForm::covector(3, 1) + KForm::covector(4, 1), AmbientMismatch);
    const std::vector<Vector> one{{1, 0, 0}};
    CHECK_THROWS_AS(evaluate(KForm::monomial(3, {1, 2}), one), DimensionMismatch);
}
