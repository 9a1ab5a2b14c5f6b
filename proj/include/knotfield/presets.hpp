#ifndef KNOTFIELD_PRESETS_HPP
#define KNOTFIELD_PRESETS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "knotfield/fields.hpp"

namespace knotfield {

// Label syntax used by the CLI and config files: "j,m,n,part[,sign]" with
// half-integers written as fractions, e.g. "1/2,-1/2,-3/2,R" or "0,0,1,I,-".
// The sign selects the frequency branch and defaults to '+'.
ConfigurationLabel parse_label(const std::string& text);

// Named presets (currently the derived null j=0 combination "hopf_ranada").
bool has_preset(const std::string& name);
std::vector<std::string> preset_names();
CompositeConfiguration preset(const std::string& name);

// Each entry is a label or a preset name; amplitudes default to 1 and apply
// entry-wise (a preset keeps its internal coefficients scaled by the entry
// amplitude).
CompositeConfiguration resolve_configuration(const std::vector<std::string>& entries,
                                             const std::vector<double>& amplitudes);

// ---- null-combination machinery ----

// The 12 real j=0 basis fields in the frozen order used by the preset:
// n in {-1, 0, +1} x freq in {+, -} x part in {R, I}.
std::vector<ConfigurationLabel> j0_basis();

// Scale-invariant nullity defect sum |S.S|^2 / sum |S|^4 with S = E + iB over
// a fixed counter-seeded sample of events.
double null_defect(const CompositeConfiguration& config, std::uint64_t seed = 42,
                   int sample_count = 48);

struct NullSearchResult {
    std::vector<double> coefficients;  // over j0_basis(), unit norm
    double defect = 0.0;
};

// Minimizes the nullity defect over the 12 j=0 amplitudes (multi-start
// Nelder-Mead on cached per-basis field samples). Deterministic for a fixed
// seed.
NullSearchResult derive_null_j0_combination(std::uint64_t seed = 42, int starts = 40,
                                            int sample_count = 48);

}  // namespace knotfield

#endif
