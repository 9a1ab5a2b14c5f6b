#ifndef KNOTFIELD_ANALYSIS_HPP
#define KNOTFIELD_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "knotfield/dynamics.hpp"
#include "knotfield/fields.hpp"
#include "knotfield/quadrature.hpp"

namespace knotfield {

// Emergent-behavior diagnostics over trajectory ensembles plus the
// cross-cutting numerical oracles (Maxwell residual scan, energy budget).

// ---- beam clustering ----

struct BeamCluster {
    Vec3 mean_direction;
    double angular_spread = 0.0;  // rms angle from the cluster mean
    std::vector<int> members;     // particle indices, ascending
};

struct BeamReport {
    std::vector<BeamCluster> clusters;
    int total = 0;
    double unclustered_fraction = 0.0;  // particles slower than the speed floor

    double mean_spread() const;
};

// Greedy agglomerative clustering of final unit velocities: repeatedly merge
// the pair of clusters with the smallest angle between mean directions until
// no pair is closer than the threshold. Deterministic for a fixed input
// order; records slower than speed_floor are counted as unclustered.
BeamReport cluster_final_directions(const std::vector<TrajectoryRecord>& records,
                                    double angle_threshold_rad,
                                    double speed_floor = 0.01);

// ---- time-reversal diagnostic ----

// Mean Hausdorff distance between each forward path and its time-reflected
// backward path (position polylines resampled to 256 arc-length-uniform
// points), normalized by the mean forward path length.
double time_reversal_defect(const std::vector<TrajectoryRecord>& forward,
                            const std::vector<TrajectoryRecord>& backward);

// ---- Maxwell residual scan ----

struct ResidualScanSpec {
    int events = 200;
    std::uint64_t seed = 1;
    double t_min = 0.2, t_max = 2.0;
    double box_half_width = 1.5;
    double fd_step = 5e-3;  // 4th-order central differences on exact fields
    ExecPolicy policy = ExecPolicy::Parallel;
};

struct ResidualStats {
    double max_rel = 0.0, mean_rel = 0.0;
    int events = 0;
    double fd_step = 0.0;
    int fd_order = 4;
};

using FieldSampler = std::function<EMFieldSample(const MinkowskiEvent&)>;

// Relative residuals of div E, div B, curl E + dB/dt, curl B - dE/dt against
// the local field scale, evaluated by finite differences of exact samples.
ResidualStats maxwell_residual_scan(const FieldSampler& field, const ResidualScanSpec& spec);
ResidualStats maxwell_residual_scan(const CompositeConfiguration& config,
                                    const ResidualScanSpec& spec = {});

// ---- energy budget ----

// Total ball energy per requested time, same quadrature for every time.
std::vector<BallEnergy> energy_budget(const CompositeConfiguration& config,
                                      const std::vector<double>& times,
                                      const BallQuadSpec& spec = {});

// ---- kappa sweep ----

struct KappaRow {
    double kappa = 0.0;
    double max_speed = 0.0;
    BeamReport beams;
};

std::vector<KappaRow> kappa_sweep(const CompositeConfiguration& config,
                                  const std::vector<ParticleState>& initial,
                                  const SimulationParams& base_params,
                                  const std::vector<double>& kappas,
                                  double cluster_threshold_rad,
                                  ExecPolicy policy = ExecPolicy::Parallel);

double mean_final_speed(const std::vector<TrajectoryRecord>& records);

}  // namespace knotfield

#endif
