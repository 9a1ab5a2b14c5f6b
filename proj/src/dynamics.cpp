#include "knotfield/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "knotfield/errors.hpp"

namespace knotfield {

void SimulationParams::validate() const {
    if (t_end == t_start) throw ValidationError("simulation window is empty");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ValidationError("tolerances must be positive");
    if (!(max_step > 0.0)) throw ValidationError("max_step must be positive");
    if (!std::isfinite(kappa)) throw ValidationError("kappa must be finite");
}

FieldProvider make_provider(const CompositeConfiguration& config) {
    config.validate();
    return [config](double t, const Vec3& x) {
        return field_strength(config, {t, x.x, x.y, x.z});
    };
}

FieldProvider uniform_field_provider(const Vec3& E0, const Vec3& B0) {
    return [E0, B0](double, const Vec3&) { return EMFieldSample{E0, B0}; };
}

namespace {

// State layout: y = (X, U, w), w = kappa Int E.V dT.
constexpr int kDim = 7;
using Y = std::array<double, kDim>;

Y pack(const Vec3& x, const Vec3& u, double w) {
    return {x.x, x.y, x.z, u.x, u.y, u.z, w};
}
Vec3 xpart(const Y& y) { return {y[0], y[1], y[2]}; }
Vec3 upart(const Y& y) { return {y[3], y[4], y[5]}; }

Y rhs(const FieldProvider& field, double kappa, double t, const Y& y) {
    const Vec3 u = upart(y);
    const double gamma = std::sqrt(1.0 + norm2(u));
    const Vec3 v = u / gamma;
    const EMFieldSample f = field(t, xpart(y));
    for (const double c : {f.E.x, f.E.y, f.E.z, f.B.x, f.B.y, f.B.z})
        if (!std::isfinite(c))
            throw NumericalError("field provider returned a non-finite value at T=" +
                                 std::to_string(t));
    const Vec3 du = kappa * (f.E + cross(v, f.B));
    return pack(v, du, kappa * dot(f.E, v));
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct SegmentResult {
    std::vector<TrajectorySample> samples;  // excludes the initial point
    std::vector<DenseSegment> segments;
    Y y_end;
};

// One adaptive sweep from t0 to t1 (either direction).
SegmentResult integrate_segment(const FieldProvider& field, const SimulationParams& p, double t0,
                                double t1, const Y& y0) {
    SegmentResult out;
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    double t = t0;
    Y y = y0;
    Y k1 = rhs(field, p.kappa, t, y);
    double h = dir * std::min({p.max_step, span, 1e-2 * std::max(span, 1.0)});

    auto scaled_err = [&](const Y& ynew, const Y& yerr) {
        double s = 0.0;
        for (int i = 0; i < kDim; ++i) {
            const double sc = p.abs_tol + p.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = yerr[i] / sc;
            s += q * q;
        }
        return std::sqrt(s / kDim);
    };

    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
            throw NumericalError("integrator step size underflow (stiffness) at T=" +
                                 std::to_string(t));

        Y y2, y3, y4, y5, y6, ynew, yerr;
        for (int i = 0; i < kDim; ++i) y2[i] = y[i] + h * a21 * k1[i];
        const Y k2 = rhs(field, p.kappa, t + c2 * h, y2);
        for (int i = 0; i < kDim; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Y k3 = rhs(field, p.kappa, t + c3 * h, y3);
        for (int i = 0; i < kDim; ++i)
            y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Y k4 = rhs(field, p.kappa, t + c4 * h, y4);
        for (int i = 0; i < kDim; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Y k5 = rhs(field, p.kappa, t + c5 * h, y5);
        for (int i = 0; i < kDim; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Y k6 = rhs(field, p.kappa, t + h, y6);
        for (int i = 0; i < kDim; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const Y k7 = rhs(field, p.kappa, t + h, ynew);  // FSAL
        for (int i = 0; i < kDim; ++i)
            yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);

        const double err = scaled_err(ynew, yerr);
        if (err <= 1.0) {
            DenseSegment seg;
            seg.t0 = t;
            seg.h = h;
            for (int i = 0; i < kDim; ++i) {
                const double dy = ynew[i] - y[i];
                const double bspl = h * k1[i] - dy;
                seg.rcont[0][i] = y[i];
                seg.rcont[1][i] = dy;
                seg.rcont[2][i] = bspl;
                seg.rcont[3][i] = dy - h * k7[i] - bspl;
                seg.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                       d6 * k6[i] + d7 * k7[i]);
            }
            out.segments.push_back(seg);
            t += h;
            y = ynew;
            k1 = k7;
            out.samples.push_back({t, xpart(y), upart(y)});
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > p.max_step) h = dir * p.max_step;
    }
    out.y_end = y;
    return out;
}

Y eval_segment(const DenseSegment& s, double t) {
    const double th = (t - s.t0) / s.h;
    const double th1 = 1.0 - th;
    Y y;
    for (int i = 0; i < kDim; ++i)
        y[i] = s.rcont[0][i] +
               th * (s.rcont[1][i] + th1 * (s.rcont[2][i] + th * (s.rcont[3][i] + th1 * s.rcont[4][i])));
    return y;
}

}  // namespace

ParticleState TrajectoryRecord::state_at(double T) const {
    for (const auto& s : segments) {
        const double lo = std::min(s.t0, s.t0 + s.h), hi = std::max(s.t0, s.t0 + s.h);
        if (T >= lo - 1e-14 && T <= hi + 1e-14) {
            const Y y = eval_segment(s, T);
            return {xpart(y), upart(y), T};
        }
    }
    throw ValidationError("dense-output query outside the integrated window");
}

double TrajectoryRecord::path_length() const {
    double L = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        L += norm(samples[i].X - samples[i - 1].X);
    return L;
}

TrajectoryRecord integrate_trajectory(const ParticleState& initial, const FieldProvider& field,
                                      const SimulationParams& params) {
    params.validate();
    const double lo = std::min(params.t_start, params.t_end);
    const double hi = std::max(params.t_start, params.t_end);
    const double anchor = initial.T;
    if (anchor < lo - 1e-12 || anchor > hi + 1e-12)
        throw ValidationError("initial state time lies outside the integration window");

    const Y y0 = pack(initial.X, initial.U, 0.0);
    TrajectoryRecord rec;
    double w_lo = 0.0, w_hi = 0.0;
    Y y_at_lo = y0, y_at_hi = y0;

    std::vector<TrajectorySample> back_samples;
    if (anchor > lo) {
        auto seg = integrate_segment(field, params, anchor, lo, y0);
        back_samples = std::move(seg.samples);
        rec.segments.insert(rec.segments.end(), seg.segments.begin(), seg.segments.end());
        w_lo = seg.y_end[6];
        y_at_lo = seg.y_end;
    }
    std::vector<TrajectorySample> fwd_samples;
    if (anchor < hi) {
        auto seg = integrate_segment(field, params, anchor, hi, y0);
        fwd_samples = std::move(seg.samples);
        rec.segments.insert(rec.segments.end(), seg.segments.begin(), seg.segments.end());
        w_hi = seg.y_end[6];
        y_at_hi = seg.y_end;
    }

    rec.samples.reserve(back_samples.size() + fwd_samples.size() + 1);
    for (auto it = back_samples.rbegin(); it != back_samples.rend(); ++it) rec.samples.push_back(*it);
    rec.samples.push_back({anchor, initial.X, initial.U});
    for (const auto& s : fwd_samples) rec.samples.push_back(s);

    rec.work_integral = w_hi - w_lo;
    rec.gamma_start = std::sqrt(1.0 + norm2(upart(y_at_lo)));
    rec.gamma_end = std::sqrt(1.0 + norm2(upart(y_at_hi)));

    double vmax = 0.0;
    for (const auto& s : rec.samples) {
        const double g = std::sqrt(1.0 + norm2(s.U));
        vmax = std::max(vmax, norm(s.U) / g);
    }
    rec.max_speed = vmax;
    const Vec3 u_end = upart(y_at_hi);
    const double un = norm(u_end);
    rec.final_direction = (un > 0.0) ? u_end / un : Vec3{};
    return rec;
}

// ---- ensembles ----

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based uniform in [0,1): reproducible and order-independent.
double u01(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(seed ^ splitmix64(counter));
    return double(bits >> 11) * 0x1.0p-53;
}

Vec3 perpendicular_unit(const Vec3& n) {
    // axis least aligned with n, Gram-Schmidt
    const Vec3 axis = (std::abs(n.x) <= std::abs(n.y) && std::abs(n.x) <= std::abs(n.z))
                          ? Vec3{1, 0, 0}
                          : (std::abs(n.y) <= std::abs(n.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return normalized(axis - dot(axis, n) * n);
}

std::vector<Vec3> octahedron_vertices() {
    return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

std::vector<Vec3> icosahedron_vertices() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    std::vector<Vec3> v;
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            v.push_back(normalized({0.0, s1, s2 * phi}));
            v.push_back(normalized({s1, s2 * phi, 0.0}));
            v.push_back(normalized({s2 * phi, 0.0, s1}));
        }
    return v;
}

std::vector<Vec3> symmetric_directions(int count) {
    if (count == 6) return octahedron_vertices();
    if (count == 12) return icosahedron_vertices();
    if (count == 18) {
        auto v = octahedron_vertices();
        const auto ico = icosahedron_vertices();
        v.insert(v.end(), ico.begin(), ico.end());
        return v;
    }
    if (count % 2 != 0)
        throw ValidationError("radial_space: count must be 6, 12, 18, or even");
    // antipodal pairs on a Fibonacci hemisphere
    std::vector<Vec3> v;
    const int half = count / 2;
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < half; ++k) {
        const double zc = (k + 0.5) / half;  // upper hemisphere
        const double rc = std::sqrt(1.0 - zc * zc);
        const double th = ga * k;
        const Vec3 d{rc * std::cos(th), rc * std::sin(th), zc};
        v.push_back(d);
        v.push_back(-d);
    }
    return v;
}

Vec3 proper_velocity(double speed, const Vec3& dir) {
    if (speed == 0.0) return {};
    const double gamma = 1.0 / std::sqrt(1.0 - speed * speed);
    return gamma * speed * dir;
}

}  // namespace

void EnsembleSpec::validate() const {
    if (kind != EnsembleKind::Explicit && count < 1)
        throw ValidationError("ensemble count must be >= 1");
    if (radius.value < 0.0) throw ValidationError("ensemble radius must be >= 0");
    // speed bounds are checked at generation time, once rmax is resolved
}

std::vector<ParticleState> generate_ensemble(const EnsembleSpec& spec, double rmax_hint) {
    spec.validate();
    std::vector<ParticleState> out;
    auto push = [&](const Vec3& x, const Vec3& u) { out.push_back({x, u, spec.t0}); };
    auto check_speed = [](double v) {
        if (!(std::abs(v) < 1.0))
            throw ValidationError("ensemble speed " + std::to_string(v) + " is not below 1");
    };

    switch (spec.kind) {
        case EnsembleKind::Line: {
            const Vec3 d = normalized(spec.direction);
            const double s = spec.radius.resolve(rmax_hint);
            for (int k = 0; k < spec.count; ++k) {
                const double off = (k - 0.5 * (spec.count - 1)) * s;
                push(off * d, {});
            }
            break;
        }
        case EnsembleKind::Circle: {
            const Vec3 n = normalized(spec.direction);
            const Vec3 u = perpendicular_unit(n);
            const Vec3 v = cross(n, u);
            const double r = spec.radius.resolve(rmax_hint);
            for (int k = 0; k < spec.count; ++k) {
                const double th = 2.0 * std::numbers::pi * k / spec.count;
                push(r * (std::cos(th) * u + std::sin(th) * v), {});
            }
            break;
        }
        case EnsembleKind::Sphere18: {
            const double r = spec.radius.resolve(rmax_hint);
            for (const auto& d : symmetric_directions(18)) push(r * d, {});
            break;
        }
        case EnsembleKind::RandomBall: {
            const double r = spec.radius.resolve(rmax_hint);
            for (int i = 0; i < spec.count; ++i) {
                const std::uint64_t base = std::uint64_t(i) << 20;
                for (std::uint64_t att = 0;; ++att) {
                    const Vec3 p{r * (2.0 * u01(spec.seed, base + 3 * att) - 1.0),
                                 r * (2.0 * u01(spec.seed, base + 3 * att + 1) - 1.0),
                                 r * (2.0 * u01(spec.seed, base + 3 * att + 2) - 1.0)};
                    if (norm(p) <= r) {
                        push(p, {});
                        break;
                    }
                }
            }
            break;
        }
        case EnsembleKind::RadialLine: {
            const Vec3 d = normalized(spec.direction);
            const double s = spec.speed.resolve(rmax_hint);
            for (int k = 0; k < spec.count; ++k) {
                const double v = (k - 0.5 * (spec.count - 1)) * s;
                check_speed(v);
                push({}, proper_velocity(std::abs(v), v >= 0.0 ? d : -d));
            }
            break;
        }
        case EnsembleKind::RadialPlane: {
            const Vec3 n = normalized(spec.direction);
            const Vec3 u = perpendicular_unit(n);
            const Vec3 v = cross(n, u);
            const double sp = spec.speed.resolve(rmax_hint);
            check_speed(sp);
            for (int k = 0; k < spec.count; ++k) {
                const double th = 2.0 * std::numbers::pi * k / spec.count;
                push({}, proper_velocity(sp, std::cos(th) * u + std::sin(th) * v));
            }
            break;
        }
        case EnsembleKind::RadialSpace: {
            const double sp = spec.speed.resolve(rmax_hint);
            check_speed(sp);
            for (const auto& d : symmetric_directions(spec.count)) push({}, proper_velocity(sp, d));
            break;
        }
        case EnsembleKind::Explicit: {
            for (const auto& s : spec.explicit_states) {
                check_speed(s.speed());
                out.push_back(s);
            }
            break;
        }
    }
    return out;
}

std::vector<TrajectoryRecord> integrate_ensemble(const std::vector<ParticleState>& initial,
                                                 const FieldProvider& field,
                                                 const SimulationParams& params,
                                                 ExecPolicy policy) {
    params.validate();
    std::vector<TrajectoryRecord> out(initial.size());
    std::vector<std::string> failures(initial.size());
    parallel_for(long(initial.size()), policy, [&](long i) {
        try {
            out[i] = integrate_trajectory(initial[i], field, params);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            throw NumericalError("particle " + std::to_string(i) + ": " + failures[i]);
    return out;
}

}  // namespace knotfield
