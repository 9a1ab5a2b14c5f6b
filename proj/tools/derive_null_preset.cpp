// Derives the null j=0 combination by minimizing the nullity defect and
// prints the coefficients in the j0_basis() order together with the defect
// re-evaluated at fresh sample points.

#include <cstdio>

#include "knotfield/presets.hpp"

int main() {
    using namespace knotfield;
    const auto result = derive_null_j0_combination(42, 60, 48);
    std::printf("defect at derivation samples: %.6e\n", result.defect);

    CompositeConfiguration cfg;
    const auto basis = j0_basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        cfg.terms.push_back({basis[i], result.coefficients[i]});
    std::printf("defect at fresh samples:      %.6e\n", null_defect(cfg, 977, 64));

    std::printf("coefficients (n, sign, part order):\n");
    for (std::size_t i = 0; i < basis.size(); ++i)
        std::printf("  %-14s % .16f\n", basis[i].str().c_str(), result.coefficients[i]);
    return 0;
}
