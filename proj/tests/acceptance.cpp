// One line per acceptance criterion; nonzero exit if any criterion fails.

#include "nilgeom/verification.hpp"

#include <cstdio>

int main()
{
    using namespace nilgeom;
    const VerificationSummary s = verify_paper();
    for (int c = 1; c <= 9; ++c) {
        std::printf("criterion %d: %s  %s (%zu assertions)\n", c, s.criterion_passed(c) ? "PASS" : "FAIL",
                    criterion_title(c).c_str(), s.count(c));
        for (const auto& a : s.assertions)
            if (a.criterion == c && !a.passed)
                std::printf("    failed: %s: %s\n", a.name.c_str(), a.detail.c_str());
    }
    std::printf("catalog facts: %s (%zu assertions)\n", s.criterion_passed(0) ? "PASS" : "FAIL", s.count(0));
    for (const auto& a : s.assertions)
        if (a.criterion == 0 && !a.passed)
            std::printf("    failed: %s: %s\n", a.name.c_str(), a.detail.c_str());
    std::printf("total: %zu assertions, %s, %.2f s\n", s.assertions.size(), s.passed() ? "PASS" : "FAIL", s.seconds);
    return s.passed() ? 0 : 1;
}
