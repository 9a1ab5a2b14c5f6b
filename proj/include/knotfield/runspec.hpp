#ifndef KNOTFIELD_RUNSPEC_HPP
#define KNOTFIELD_RUNSPEC_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "knotfield/analysis.hpp"
#include "knotfield/dynamics.hpp"
#include "knotfield/fields.hpp"
#include "knotfield/tracing.hpp"

namespace knotfield {

// Orchestration shared by the CLI and the tests: every run is described by a
// flat parameter record that round-trips through JSON, and every trajectory
// run emits a manifest that replays to byte-identical outputs.

// IEEE-754 round-trip decimal formatting (shortest representation).
std::string format_double(double v);

struct FieldSampleRun {
    std::vector<std::string> configs;
    std::vector<double> amplitudes;
    double t = 0.0;
    GridSpec grid;
    std::string out_csv = "fields.csv";
    bool serial = false;
};

struct RmaxRun {
    std::vector<std::string> configs;
    std::vector<double> amplitudes;
    double t = 0.0;
    SearchParams search;
    std::string out_json;  // empty = stdout only
    bool serial = false;
};

struct TrajectoriesRun {
    std::vector<std::string> configs;
    std::vector<double> amplitudes;
    double kappa = 0.0;
    bool kappa_set = false;
    std::string ensemble = "sphere18:rmax";
    std::uint64_t seed = 0;
    double t0 = 0.0, t1 = 1.0;
    double rel_tol = 1e-9, abs_tol = 1e-12, max_step = 0.05;
    std::string out_csv = "trajectories.csv";
    std::string out_manifest = "trajectories_manifest.json";
    bool serial = false;
};

struct FieldLinesRun {
    std::vector<std::string> configs;
    std::vector<double> amplitudes;
    double t = 0.0;
    std::vector<Vec3> seeds;  // defaults to the four standard seed points
    std::string kinds = "both";  // "E", "B", or "both"
    TraceParams trace;
    std::string out_jsonl = "field_lines.jsonl";
    bool serial = false;
};

// Parse "kind:arg:arg..." ensemble syntax; magnitudes accept "rmax" and
// "rmax/N" for values expressed in units of R_max(0).
EnsembleSpec parse_ensemble(const std::string& text, std::uint64_t seed, double t0);

void execute_field_sample(const FieldSampleRun& run);
RmaxResult execute_rmax(const RmaxRun& run);
void execute_trajectories(const TrajectoriesRun& run);
void execute_field_lines(const FieldLinesRun& run);

// Manifest replay: reads the manifest written by execute_trajectories and
// reruns it with outputs redirected next to `out_csv`.
TrajectoriesRun trajectories_from_json(const nlohmann::json& j);
nlohmann::json trajectories_to_json(const TrajectoriesRun& run);

}  // namespace knotfield

#endif
