// Acceptance suite runner: one PASS/FAIL line per criterion. Exit code is the
// number of gating failures (documented expected failures report but do not
// gate; pass --strict to change that).

#include <cstdio>
#include <cstring>

#include "knotfield/acceptance.hpp"

int main(int argc, char** argv) {
    knotfield::AcceptanceOptions opt;
    bool strict = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--strict") == 0)
            strict = true;
        else if (std::strcmp(argv[i], "--serial") == 0)
            opt.policy = knotfield::ExecPolicy::Serial;
        else
            opt.only.push_back(std::atoi(argv[i]));
    }

    const auto results = knotfield::run_acceptance(opt, [](const knotfield::CriterionResult& r) {
        std::printf("%-28s %2d %-32s (%6.1f s)  %s\n",
                    r.pass ? "PASS" : (r.expected_fail ? "FAIL (expected, documented)" : "FAIL"),
                    r.id, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    });

    const int failures = knotfield::count_gating_failures(results, strict);
    if (failures > 0) std::printf("%d gating criterion failure(s)\n", failures);
    return failures;
}
