#ifndef KNOTFIELD_DYNAMICS_HPP
#define KNOTFIELD_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "knotfield/exec.hpp"
#include "knotfield/fields.hpp"
#include "knotfield/vec.hpp"

namespace knotfield {

// Relativistic Lorentz-force dynamics in dimensionless form,
//   dX/dT = V = U / gamma,   dU/dT = kappa (E + V x B),
// with proper velocity U = gamma V as the state variable so |V| < 1 is
// structural. Trajectories are integrated with an adaptive embedded
// Dormand-Prince 5(4) pair with dense output.

struct ParticleState {
    Vec3 X, U;
    double T = 0.0;

    double gamma() const { return std::sqrt(1.0 + norm2(U)); }
    Vec3 velocity() const { return U / gamma(); }
    double speed() const { return norm(velocity()); }
};

struct SimulationParams {
    double kappa = 1.0;
    double t_start = 0.0;
    double t_end = 1.0;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.05;

    void validate() const;
};

using FieldProvider = std::function<EMFieldSample(double t, const Vec3& x)>;

FieldProvider make_provider(const CompositeConfiguration& config);
FieldProvider uniform_field_provider(const Vec3& E0, const Vec3& B0);

// dU/dT for one state in a given field sample.
inline Vec3 lorentz_rhs_u(const ParticleState& s, const EMFieldSample& f, double kappa) {
    return kappa * (f.E + cross(s.velocity(), f.B));
}

struct TrajectorySample {
    double T;
    Vec3 X, U;
};

// One accepted integrator step with its dense-output interpolant.
struct DenseSegment {
    double t0, h;                       // step start and signed width
    std::array<std::array<double, 7>, 5> rcont;  // interpolation coefficients
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;  // strictly monotone in T
    std::vector<DenseSegment> segments;

    double max_speed = 0.0;
    Vec3 final_direction;      // unit final velocity (zero if at rest)
    double work_integral = 0.0;  // kappa Int E.V dT over [t_start, t_end]
    double gamma_start = 1.0, gamma_end = 1.0;

    ParticleState state_at(double T) const;  // dense-output query
    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }
    double path_length() const;
};

// Integrates from initial.T to params.t_end, and also backward to
// params.t_start when the window extends behind the anchor. The returned
// record is ordered by increasing T.
TrajectoryRecord integrate_trajectory(const ParticleState& initial, const FieldProvider& field,
                                      const SimulationParams& params);

// ---- initial-condition generators ----

enum class EnsembleKind {
    Line,        // positions k * spacing * dir, centered, V = 0
    Circle,      // positions on a circle about the origin, V = 0
    Sphere18,    // 6 octahedron + 12 icosahedron vertices, V = 0
    RandomBall,  // uniform in a solid ball (counter-based RNG), V = 0
    RadialLine,  // X = 0, speed ladder k * speed * dir
    RadialPlane, // X = 0, speeds of fixed magnitude, evenly spread in a plane
    RadialSpace, // X = 0, speeds of fixed magnitude, symmetric 3d directions
    Explicit,
};

// A scalar that may be expressed in units of R_max(0) of the field at hand.
struct Magnitude {
    double value = 0.0;
    bool times_rmax = false;

    double resolve(double rmax_hint) const { return times_rmax ? value * rmax_hint : value; }
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::Sphere18;
    Vec3 direction{0.0, 0.0, 1.0};  // line direction / circle normal / plane normal
    Magnitude radius{1.0, false};   // radius or line spacing
    Magnitude speed{0.0, false};    // radial-generator speed scale
    int count = 18;
    std::uint64_t seed = 0;
    double t0 = 0.0;
    std::vector<ParticleState> explicit_states;

    void validate() const;
};

std::vector<ParticleState> generate_ensemble(const EnsembleSpec& spec, double rmax_hint);

// Independent trajectories, results ordered by particle index regardless of
// the execution policy.
std::vector<TrajectoryRecord> integrate_ensemble(const std::vector<ParticleState>& initial,
                                                 const FieldProvider& field,
                                                 const SimulationParams& params,
                                                 ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace knotfield

#endif
