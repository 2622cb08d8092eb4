#include "nilgeom/coordinate_model.hpp"
#include "nilgeom/fuzz.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

namespace {

Polynomial var(std::size_t v, std::size_t nvars = 4) { return Polynomial::variable(nvars, v); }
PolyForm dv(int v, std::size_t nvars = 4) { return PolyForm::differential(nvars, 4, v); }

} // namespace

TEST_CASE("polynomial arithmetic", "[model]")
{
    const Polynomial x = var(0, 2), y = var(1, 2);
    const Polynomial p = (x + y).pow(2);
    CHECK(p == x * x + Scalar(2) * x * y + y * y);
    CHECK(p.total_degree() == 2);
    CHECK(p.degree_in(0) == 2);
    CHECK(p.derivative(0) == Scalar(2) * x + Scalar(2) * y);
    CHECK(p.substitute(1, 3) == x * x + Scalar(6) * x + Polynomial::constant(2, 9));
    const std::vector<Scalar> pt{2, -1};
    CHECK(p.evaluate(pt) == 1);
    CHECK((p - p).is_zero());
    CHECK(Polynomial::constant(2, 5).as_constant() == Scalar(5));
    CHECK_FALSE(x.as_constant().has_value());
    const std::vector<std::string> names{"x", "y"};
    CHECK((x * y - Scalar(1, 2) * x).to_string(names) == "-1/2*x + x*y");
}

TEST_CASE("composition agrees with evaluation", "[model][property]")
{
    fuzz::Generator gen(71);
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial p(2);
        for (int t = 0; t < 4; ++t)
            p += gen.integer(3) * var(0, 2).pow(static_cast<unsigned>(gen.uniform(0, 2))) *
                 var(1, 2).pow(static_cast<unsigned>(gen.uniform(0, 2)));
        const std::vector<Polynomial> images{var(0, 2) + var(1, 2), var(0, 2) * var(1, 2)};
        const Polynomial c = p.compose(images);
        const std::vector<Scalar> pt{gen.integer(4), gen.integer(4)};
        const std::vector<Scalar> image_pt{pt[0] + pt[1], pt[0] * pt[1]};
        CHECK(c.evaluate(pt) == p.evaluate(image_pt));
    }
}

TEST_CASE("exterior derivative of polynomial forms", "[model]")
{
    const auto frame = model_coframe();
    CHECK(poly_d(frame[2]) == wedge(dv(0), dv(1)));
    CHECK(poly_d(frame[3]) == wedge(dv(0), dv(2)));
    CHECK(poly_d(frame[3]) == wedge(frame[0], frame[2]));
    CHECK(poly_d(PolyForm::function(4, Polynomial::constant(4, 7))).is_zero());
    CHECK(poly_d(dv(1)).is_zero());
    fuzz::Generator gen(72);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p(4);
        for (int t = 0; t < 3; ++t)
            p += gen.integer(3) * var(static_cast<std::size_t>(gen.uniform(0, 3))) *
                 var(static_cast<std::size_t>(gen.uniform(0, 3)));
        const PolyForm a = p * dv(gen.uniform(0, 3));
        CHECK(poly_d(poly_d(a)).is_zero());
    }
}

TEST_CASE("pullbacks", "[model]")
{
    const PolyMap id = PolyMap::identity(4, 4);
    for (const auto& a : model_coframe())
        CHECK(pullback(id, a) == a);

    const PolyMap left = left_translation();
    const auto frame = model_coframe(8);
    CHECK(pullback(left, frame[0]) == frame[0]);
    for (const auto& a : frame)
        CHECK(pullback(left, a) == a);
    // dt alone is not invariant
    const PolyForm dt = PolyForm::differential(8, 4, 3);
    CHECK_FALSE(pullback(left, dt) == dt);
    CHECK_THROWS_AS(pullback(id, frame[0]), DimensionMismatch);
}

TEST_CASE("integer-valued polynomials and lattices", "[model]")
{
    const Polynomial x = var(0, 2), y = var(1, 2);
    CHECK(is_integer_valued(Scalar(1, 2) * x * (x - Polynomial::constant(2, 1))));
    std::vector<Scalar> where;
    CHECK_FALSE(is_integer_valued(Scalar(1, 2) * x * y, &where));
    CHECK(where == std::vector<Scalar>{1, 1});

    CHECK(check_lattice_closure({2, 1, 1, 1}, "2Z x Z^3").passed);
    const RealizationCheck z4 = check_lattice_closure({1, 1, 1, 1}, "Z^4");
    CHECK_FALSE(z4.passed);
    CHECK(z4.detail.find("coordinate 4") != std::string::npos);
}

TEST_CASE("group law", "[model]")
{
    fuzz::Generator gen(73);
    auto point = [&] {
        std::vector<Polynomial> p;
        for (int i = 0; i < 4; ++i)
            p.push_back(Polynomial::constant(1, gen.rational(4)));
        return p;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = point(), q = point(), r = point();
        CHECK(group_multiply(group_multiply(p, q), r) == group_multiply(p, group_multiply(q, r)));
        const auto e = group_multiply(p, group_inverse(p));
        for (const auto& c : e)
            CHECK(c.is_zero());
    }
}

TEST_CASE("the full realization report passes", "[model]")
{
    const RealizationReport r = verify_realization();
    CHECK(r.all_passed());
    for (const char* name : {"structure_equations", "left_invariance", "coframe_at_identity", "lattice_closure",
                             "associativity", "inverse"}) {
        const RealizationCheck* c = r.find(name);
        REQUIRE(c);
        CHECK(c->passed);
    }
    CHECK(r.find("nonexistent") == nullptr);
}
