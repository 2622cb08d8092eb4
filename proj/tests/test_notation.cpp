#include "nilgeom/catalog.hpp"
#include "nilgeom/fuzz.hpp"
#include "nilgeom/notation.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

TEST_CASE("parsing Salamon strings", "[notation]")
{
    const LieAlgebra six = parse_salamon("(0,0,0,0,12,34)");
    CHECK(six.dim() == 6);
    CHECK(six.d_covector(5) == KForm::monomial(6, {1, 2}));
    CHECK(six.d_covector(6) == KForm::monomial(6, {3, 4}));

    CHECK(parse_salamon("(0,0,0,0)") == abelian(4));
    CHECK(parse_salamon("( 0 , 0 , 0 , 12 )") == parse_salamon("(0,0,0,12)"));

    const LieAlgebra fil = parse_salamon("(0,0,12,13)");
    CHECK(fil.d_covector(3) == KForm::monomial(4, {1, 2}));
    CHECK(fil.d_covector(4) == KForm::monomial(4, {1, 3}));
    CHECK(fil == get_example("filiform_0_0_12_13").algebra);

    const LieAlgebra mixed = parse_salamon("(0,0,0,-12+2*13)");
    CHECK(mixed.d_covector(4) == Scalar(2) * KForm::monomial(4, {1, 3}) - KForm::monomial(4, {1, 2}));
    const LieAlgebra frac = parse_salamon("(0,0,1/2*12)");
    CHECK(frac.d_covector(3) == Scalar(1) / 2 * KForm::monomial(3, {1, 2}));
    const LieAlgebra brackets = parse_salamon("(0,0,[1,2])");
    CHECK(brackets == parse_salamon("(0,0,12)"));
}

TEST_CASE("canonical formatting", "[notation]")
{
    CHECK(format_salamon(parse_salamon("(0,0,0,12)")) == "(0,0,0,12)");
    CHECK(format_salamon(parse_salamon("(0,0,0,2*13-12)")) == "(0,0,0,-12+2*13)");
    CHECK(format_salamon(parse_salamon("(0,0,0,1*12)")) == "(0,0,0,12)");
    CHECK(format_salamon(parse_salamon("(0,0,12+0*13)")) == "(0,0,12)");
    CHECK(format_salamon(parse_salamon("(0,0,-1/2*12)")) == "(0,0,-1/2*12)");
    CHECK(format_salamon(heisenberg_line(2)) == "(0,0,0,12)");
}

TEST_CASE("two-digit pairs are replaced by brackets beyond dimension 9", "[notation]")
{
    const std::string ten = "(0,0,0,0,0,0,0,0,0,[1,2])";
    const LieAlgebra l = parse_salamon(ten);
    CHECK(l.dim() == 10);
    CHECK(l.d_covector(10) == KForm::monomial(10, {1, 2}));
    CHECK(format_salamon(l) == ten);
    CHECK_THROWS_AS(parse_salamon("(0,0,0,0,0,0,0,0,0,12)"), SyntaxError);
    const LieAlgebra big = parse_salamon("(0,0,0,0,0,0,0,0,0,0,[3,10])");
    CHECK(big.d_covector(11) == KForm::monomial(11, {3, 10}));
}

TEST_CASE("syntax errors carry a position and the expected tokens", "[notation][errors]")
{
    struct Case {
        const char* text;
        std::size_t position;
    };
    for (const Case& c : {Case{"0,0,12", 0}, Case{"(0,0,12", 7}, Case{"(0,0,1)", 5}, Case{"(0,0,12)x", 8},
                          Case{"(0,0,12+)", 8}, Case{"(0,0,21)", 5}}) {
        try {
            (void)parse_salamon(c.text);
            FAIL(std::string("expected SyntaxError for ") + c.text);
        } catch (const SyntaxError& e) {
            CHECK(e.position() == c.position);
            CHECK_FALSE(e.expected().empty());
        }
    }
    CHECK_THROWS_AS(parse_salamon("(0,0,[1,4])"), IndexOutOfRange);
    CHECK_THROWS_AS(parse_salamon("(0,0,14)"), IndexOutOfRange);
    CHECK_THROWS_AS(parse_salamon(""), SyntaxError);
    CHECK_THROWS_AS(parse_salamon("()"), SyntaxError);
}

TEST_CASE("parser is total on noise", "[notation][property]")
{
    fuzz::Generator gen(61);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::string text = gen.coin() ? "(" + gen.noise(16) + ")" : gen.noise(20);
        try {
            (void)parse_salamon(text);
        } catch (const SyntaxError&) {
        } catch (const IndexOutOfRange&) {
        } catch (const JacobiViolation&) {
        }
        try {
            (void)parse_form(text, 5);
        } catch (const SyntaxError&) {
        } catch (const IndexOutOfRange&) {
        }
    }
    SUCCEED("no unexpected exception types");
}

TEST_CASE("round trip on random algebras", "[notation][property]")
{
    fuzz::Generator gen(62);
    for (int trial = 0; trial < 200; ++trial) {
        const LieAlgebra l = gen.nilpotent(1, 7);
        const std::string text = format_salamon(l);
        CHECK(parse_salamon(text) == l);
        CHECK(format_salamon(parse_salamon(text)) == text);
    }
}

TEST_CASE("forms", "[notation]")
{
    CHECK(parse_form("e13+e42", 4) == KForm::monomial(4, {1, 3}) - KForm::monomial(4, {2, 4}));
    CHECK(parse_form("x2", 4) == KForm::covector(4, 2));
    CHECK(parse_form("-1/2*e[1,12]", 12) == Scalar(-1) / 2 * KForm::monomial(12, {1, 12}));
    CHECK(parse_form("3", 4) == KForm::constant(4, 3));
    CHECK(parse_form("0", 4, 2) == KForm(4, 2));
    CHECK(format_form(parse_form("e13+e42", 4)) == "e13-e24");
    CHECK(format_form(KForm::covector(4, 3, -1)) == "-x3");
    CHECK(format_form(KForm(4, 2)) == "0");
    CHECK(format_form(KForm::monomial(12, {2, 11})) == "e[2,11]");
    CHECK_THROWS_AS(parse_form("e12+x3", 4), SyntaxError);
    CHECK_THROWS_AS(parse_form("e15", 4), IndexOutOfRange);
}
