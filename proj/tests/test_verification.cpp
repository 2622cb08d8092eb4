#include "nilgeom/fuzz.hpp"
#include "nilgeom/verification.hpp"

#include <catch_amalgamated.hpp>

using namespace nilgeom;

TEST_CASE("an injected sign error is caught by the d^2 = 0 sweep", "[verification]")
{
    VerificationSummary summary;
    detail::Recorder rec(summary);
    VerifyOptions options;
    options.fuzz_cases = 200;
    options.inject_sign_error = true;
    verify_properties(rec, options);
    const Assertion* first = summary.first_failure();
    REQUIRE(first);
    CHECK(first->name == "d²=0");
    CHECK(first->detail.find("case") != std::string::npos);
}

TEST_CASE("the faulty differential really breaks d^2 = 0", "[verification]")
{
    fuzz::Generator gen(91);
    int broken = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const LieAlgebra l = gen.nilpotent(3, 7);
        const KForm a = gen.form(l.dim(), gen.uniform(0, l.dim()));
        CHECK(ce_d(l, ce_d(l, a)).is_zero());
        if (!detail::faulty_ce_d(l, detail::faulty_ce_d(l, a)).is_zero())
            ++broken;
    }
    CHECK(broken > 0);
}

TEST_CASE("summary bookkeeping", "[verification]")
{
    VerificationSummary s;
    detail::Recorder rec(s);
    rec.check(1, "a", true);
    rec.check(2, "b", false, "why");
    rec.guarded(3, "c", []() -> std::pair<bool, std::string> { throw InvalidParameter("boom"); });
    CHECK(s.criterion_passed(1));
    CHECK_FALSE(s.criterion_passed(2));
    CHECK_FALSE(s.criterion_passed(3));
    CHECK_FALSE(s.criterion_passed(4));
    CHECK(s.first_failure()->name == "b");
    CHECK(s.assertions[2].detail.find("boom") != std::string::npos);
    const Json j = summary_to_json(s);
    CHECK(j["passed"] == false);
    CHECK(j["first_failure"] == "b");
    CHECK(j["criteria"].size() == 9);
}
