#include "knotfield/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "knotfield/analysis.hpp"
#include "knotfield/dynamics.hpp"
#include "knotfield/fields.hpp"
#include "knotfield/harmonics.hpp"
#include "knotfield/presets.hpp"
#include "knotfield/quadrature.hpp"
#include "knotfield/runspec.hpp"

namespace knotfield {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
double u01(std::uint64_t seed, std::uint64_t k) {
    return double(mix64(seed ^ mix64(k)) >> 11) * 0x1.0p-53;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// speed bound plus work-energy identity for one integrated record
void check_record(const TrajectoryRecord& rec, const SimulationParams& p, double& worst_speed,
                  double& worst_we) {
    for (const auto& s : rec.samples) {
        const double g = std::sqrt(1.0 + norm2(s.U));
        worst_speed = std::max(worst_speed, norm(s.U) / g);
    }
    const double lhs = std::abs((rec.gamma_end - rec.gamma_start) - rec.work_integral);
    const double allowed = 10.0 * p.rel_tol * rec.gamma_end;
    worst_we = std::max(worst_we, lhs / allowed);
}

std::vector<ParticleState> sphere18_at(double radius) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::Sphere18;
    spec.radius = {radius, false};
    return generate_ensemble(spec, 0.0);
}

// ---- criterion 1 ----
CriterionResult criterion_geometry(ExecPolicy policy) {
    CriterionResult c{1, "geometry-consistency"};
    constexpr int kEvents = 100000;
    constexpr double kFdStep = 1e-5;

    std::vector<double> unit_err(kEvents), frame_err(kEvents), metric_err(kEvents);
    parallel_for(kEvents, policy, [&](long i) {
        const std::uint64_t b = std::uint64_t(i) * 4;
        const MinkowskiEvent ev{4.0 * u01(11, b) - 2.0, 4.0 * u01(11, b + 1) - 2.0,
                                4.0 * u01(11, b + 2) - 2.0, 4.0 * u01(11, b + 3) - 2.0};
        const auto chain = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);

        double n2 = 0.0;
        for (double w : chain.omega) n2 += w * w;
        unit_err[i] = std::abs(n2 - 1.0);

        // FD oracle: dtau_mu = d_mu tau, e^a_mu = -eta^a_{BC} omega_B d_mu omega_C
        double dtau_fd[4], domega[4][4];
        for (int mu = 0; mu < 4; ++mu) {
            MinkowskiEvent ep = ev, em = ev;
            (mu == 0 ? ep.t : mu == 1 ? ep.x : mu == 2 ? ep.y : ep.z) += kFdStep;
            (mu == 0 ? em.t : mu == 1 ? em.x : mu == 2 ? em.y : em.z) -= kFdStep;
            const auto cp = to_cylinder(ep), cm = to_cylinder(em);
            dtau_fd[mu] = (cp.tau - cm.tau) / (2.0 * kFdStep);
            for (int C = 0; C < 4; ++C)
                domega[mu][C] = (cp.omega[C] - cm.omega[C]) / (2.0 * kFdStep);
        }
        double scale = 0.0, err = 0.0;
        for (int mu = 0; mu < 4; ++mu) {
            scale = std::max(scale, std::abs(chain.dtau[mu]));
            err = std::max(err, std::abs(chain.dtau[mu] - dtau_fd[mu]));
        }
        for (int a = 0; a < 3; ++a)
            for (int mu = 0; mu < 4; ++mu) {
                // eta^a_{bc} = eps_abc, eta^a_{b4} = -eta^a_{4b} = delta_ab
                double e_fd = 0.0;
                for (int bb = 0; bb < 3; ++bb)
                    for (int cc = 0; cc < 3; ++cc) {
                        if (bb == cc || bb == a || cc == a) continue;
                        const double eps = (cc == (a + 2) % 3) ? 1.0 : -1.0;
                        e_fd -= eps * chain.omega[bb] * domega[mu][cc];
                    }
                e_fd -= chain.omega[a] * domega[mu][3] - chain.omega[3] * domega[mu][a];
                scale = std::max(scale, std::abs(chain.frame[a][mu]));
                err = std::max(err, std::abs(chain.frame[a][mu] - e_fd));
            }
        frame_err[i] = err / scale;

        // pulled-back round metric: sum_a e^a e^a - dtau dtau = sigma^2 eta
        const double s2 = chain.sigma * chain.sigma;
        double merr = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double g = -chain.dtau[mu] * chain.dtau[nu];
                for (int a = 0; a < 3; ++a) g += chain.frame[a][mu] * chain.frame[a][nu];
                const double eta = (mu == nu) ? (mu == 0 ? -1.0 : 1.0) : 0.0;
                merr = std::max(merr, std::abs(g - s2 * eta));
            }
        metric_err[i] = merr;
    });

    double max_unit = 0.0, max_frame = 0.0, max_metric = 0.0;
    for (int i = 0; i < kEvents; ++i) {
        max_unit = std::max(max_unit, unit_err[i]);
        max_frame = std::max(max_frame, frame_err[i]);
        max_metric = std::max(max_metric, metric_err[i]);
    }
    c.pass = max_unit < 1e-12 && max_frame < 1e-6 && max_metric < 1e-9;
    c.detail = "|omega|-1 max " + fmt(max_unit) + " (<1e-12), coframe-vs-FD max " + fmt(max_frame) +
               " (<1e-6), metric identity max " + fmt(max_metric) + " (<1e-9, sigma^2 factor)";
    return c;
}

// ---- criterion 2 ----
CriterionResult criterion_harmonics(ExecPolicy policy) {
    CriterionResult c{2, "harmonics-orthonormality-laplacian"};

    std::vector<SpinLabel> labels;
    for (int tj = 0; tj <= 3; ++tj)
        for (int tm = -tj; tm <= tj; tm += 2)
            for (int tn = -tj; tn <= tj; tn += 2) labels.push_back({tj, tm, tn});

    const auto rule = s3_quadrature(48);
    const long n_nodes = long(rule.points.size());
    const int n_lab = int(labels.size());

    std::vector<std::complex<double>> vals(std::size_t(n_nodes) * n_lab);
    parallel_for(n_nodes, policy, [&](long i) {
        for (int l = 0; l < n_lab; ++l) {
            const auto y = harmonic_unchecked<double>(labels[l], rule.points[i]);
            vals[std::size_t(i) * n_lab + l] = {y.re, y.im};
        }
    });
    // Gram accumulated per label pair in node order
    double max_ortho = 0.0;
    for (int a = 0; a < n_lab; ++a)
        for (int b = a; b < n_lab; ++b) {
            std::complex<double> acc = 0.0;
            for (long i = 0; i < n_nodes; ++i)
                acc += rule.weights[i] * std::conj(vals[std::size_t(i) * n_lab + a]) *
                       vals[std::size_t(i) * n_lab + b];
            const double target = (a == b) ? 1.0 : 0.0;
            max_ortho = std::max(max_ortho, std::abs(acc - target));
        }

    // Laplace-Beltrami by 4th-order FD on the degree-0 homogeneous extension:
    // for that extension the ambient R^4 Laplacian restricted to |x|=1 is the
    // spherical Laplacian; the eigenvalue is -4 j (j+1).
    constexpr double h = 0.02;
    double max_lap = 0.0;
    for (int l = 0; l < n_lab; ++l) {
        const auto& lab = labels[l];
        const double eig = -double(lab.two_j) * (lab.two_j + 2);  // -4j(j+1)
        for (int s = 0; s < 12; ++s) {
            std::array<double, 4> w;
            double n2 = 0.0;
            for (int kdx = 0; kdx < 4; ++kdx) {
                w[kdx] = 2.0 * u01(23, std::uint64_t(l) * 64 + s * 4 + kdx) - 1.0;
                n2 += w[kdx] * w[kdx];
            }
            if (n2 < 1e-3) continue;
            const double inv = 1.0 / std::sqrt(n2);
            for (auto& v : w) v *= inv;

            auto G = [&](const std::array<double, 4>& p) {
                double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
                const std::array<double, 4> q{p[0] / r, p[1] / r, p[2] / r, p[3] / r};
                const auto y = harmonic_unchecked<double>(lab, q);
                return std::complex<double>(y.re, y.im);
            };
            const auto y0 = G(w);
            std::complex<double> lap = 0.0;
            for (int mu = 0; mu < 4; ++mu) {
                auto shift = [&](double s_) {
                    auto p = w;
                    p[mu] += s_ * h;
                    return G(p);
                };
                lap += (-shift(2.0) + 16.0 * shift(1.0) - 30.0 * y0 + 16.0 * shift(-1.0) -
                        shift(-2.0)) /
                       (12.0 * h * h);
            }
            const double denom = std::max(std::abs(eig * y0), std::abs(y0));
            if (std::abs(y0) < 0.05) continue;  // avoid near-zero normalization
            max_lap = std::max(max_lap, std::abs(lap - eig * y0) / denom);
        }
    }

    c.pass = max_ortho < 1e-8 && max_lap < 1e-4;
    c.detail = "orthonormality max dev " + fmt(max_ortho) + " (<1e-8, " +
               std::to_string(n_lab) + " labels), Laplacian eigenvalue rel err " + fmt(max_lap) +
               " (<1e-4)";
    return c;
}

// ---- criterion 3 ----
CriterionResult criterion_maxwell(ExecPolicy policy) {
    CriterionResult c{3, "maxwell-residuals"};
    double worst = 0.0;
    std::string worst_label;
    int n_cfg = 0;
    for (int tj : {0, 1, 2})
        for (int tm = -tj; tm <= tj; tm += 2)
            for (int tn = -(tj + 2); tn <= tj + 2; tn += 2)
                for (FreqSign f : {FreqSign::Plus, FreqSign::Minus})
                    for (FieldPart p : {FieldPart::Real, FieldPart::Imag}) {
                        const ConfigurationLabel lab{tj, tm, tn, f, p};
                        ResidualScanSpec spec;
                        spec.events = 200;
                        spec.seed = 1000 + n_cfg;
                        spec.policy = policy;
                        const auto stats =
                            maxwell_residual_scan(CompositeConfiguration::single(lab), spec);
                        if (stats.max_rel > worst) {
                            worst = stats.max_rel;
                            worst_label = lab.str();
                        }
                        ++n_cfg;
                    }

    // negative control: flip the sign of B, the curl residual must fire
    const auto cfg = CompositeConfiguration::single({0, 0, 2, FreqSign::Plus, FieldPart::Real});
    ResidualScanSpec spec;
    spec.events = 50;
    spec.policy = policy;
    const auto corrupted = maxwell_residual_scan(
        [&cfg](const MinkowskiEvent& ev) {
            auto f = field_strength(cfg, ev);
            f.B = -1.0 * f.B;
            return f;
        },
        spec);

    c.pass = worst < 1e-4 && corrupted.max_rel > 1e-1;
    c.detail = std::to_string(n_cfg) + " basis configs x 200 events, max rel residual " +
               fmt(worst) + " (<1e-4, worst " + worst_label + "); corrupted-field control " +
               fmt(corrupted.max_rel) + " (>0.1)";
    return c;
}

// ---- criterion 4 ----
CriterionResult criterion_extreme_axis(ExecPolicy) {
    CriterionResult c{4, "extreme-config-z-axis-vanishing"};
    double worst = 0.0;
    for (const auto& lab :
         {ConfigurationLabel{2, 2, 4, FreqSign::Plus, FieldPart::Real},
          ConfigurationLabel{2, -2, -4, FreqSign::Plus, FieldPart::Real}}) {
        const auto cfg = CompositeConfiguration::single(lab);
        for (int i = 0; i < 50; ++i) {
            const double z = -2.5 + 5.0 * i / 49.0;
            for (double t : {0.0, 0.5, 1.0}) {
                const auto f = field_strength(cfg, {t, 0.0, 0.0, z});
                worst = std::max({worst, norm(f.E), norm(f.B)});
            }
        }
    }
    c.pass = worst < 1e-10;
    c.detail = "(1;1,2)_R and (1;-1,-2)_R on 50 z-points x t in {0,0.5,1}: max field " +
               fmt(worst) + " (<1e-10)";
    return c;
}

// ---- criterion 5 ----
CriterionResult criterion_energy(ExecPolicy policy) {
    CriterionResult c{5, "energy-conservation"};
    const auto cfg = CompositeConfiguration::single({0, 0, 2, FreqSign::Plus, FieldPart::Real});
    BallQuadSpec spec;
    spec.policy = policy;
    const auto e0 = ball_energy(cfg, 0.0, spec);
    const auto e1 = ball_energy(cfg, 1.0, spec);
    BallQuadSpec fine = spec;
    fine.n_radial *= 2;
    const auto e0f = ball_energy(cfg, 0.0, fine);

    const double drift = std::abs(e1.total - e0.total) / e0.total;
    const double conv = std::abs(e0f.total - e0.total) / e0.total;
    c.pass = drift < 0.01 && conv < 0.001;
    c.detail = "(0;0,1)_R: E(0)=" + fmt(e0.total) + ", E(1)=" + fmt(e1.total) + ", drift " +
               fmt(drift) + " (<0.01); radial self-convergence " + fmt(conv) + " (<0.001)";
    return c;
}

// ---- criterion 6 ----
CriterionResult criterion_kinematics(ExecPolicy) {
    CriterionResult c{6, "kinematics-oracles"};

    // free motion at kappa = 0
    SimulationParams free_p;
    free_p.kappa = 0.0;
    free_p.t_start = 0.0;
    free_p.t_end = 2.0;
    const Vec3 v0{0.3, -0.2, 0.5};
    const double g0 = 1.0 / std::sqrt(1.0 - norm2(v0));
    const ParticleState init{{0.1, 0.2, -0.3}, g0 * v0, 0.0};
    const auto free_rec =
        integrate_trajectory(init, uniform_field_provider({}, {}), free_p);
    double free_err = 0.0;
    for (const auto& s : free_rec.samples) {
        const Vec3 exact = init.X + s.T * v0;
        free_err = std::max(free_err, norm(s.X - exact));
    }

    // relativistic cyclotron in a uniform B
    const double b0 = 2.0, kappa = 1.5, u0 = 3.0;
    const double gamma = std::sqrt(1.0 + u0 * u0);
    const double period = 2.0 * std::numbers::pi * gamma / (kappa * b0);
    SimulationParams cyc;
    cyc.kappa = kappa;
    cyc.t_start = 0.0;
    cyc.t_end = 20.0 * period;
    cyc.rel_tol = 1e-12;
    cyc.abs_tol = 1e-14;
    cyc.max_step = period / 20.0;
    const ParticleState cyc0{{0.0, 0.0, 0.0}, {u0, 0.0, 0.0}, 0.0};
    const auto cyc_rec =
        integrate_trajectory(cyc0, uniform_field_provider({}, {0.0, 0.0, b0}), cyc);
    double u_drift = 0.0, radius_err = 0.0;
    const double r_gyro = u0 / (kappa * b0);
    const Vec3 center{0.0, -r_gyro, 0.0};
    for (const auto& s : cyc_rec.samples) {
        u_drift = std::max(u_drift, std::abs(norm(s.U) - u0));
        radius_err = std::max(radius_err, std::abs(norm(s.X - center) - r_gyro) / r_gyro);
    }

    // work-energy on a field trajectory (the Fig. 3 run at kappa = 100)
    SimulationParams fig3;
    fig3.kappa = 100.0;
    fig3.t_start = -1.0;
    fig3.t_end = 1.0;
    const auto cfg = CompositeConfiguration::single({1, -1, -3, FreqSign::Plus, FieldPart::Real});
    const auto rec = integrate_trajectory({{0.01, 0.01, 0.01}, {}, 0.0}, make_provider(cfg), fig3);
    double worst_speed = 0.0, worst_we = 0.0;
    check_record(rec, fig3, worst_speed, worst_we);

    c.pass = free_err < 1e-7 && u_drift < 1e-9 && radius_err < 1e-7 && worst_speed < 1.0 &&
             worst_we < 1.0;
    c.detail = "free-motion err " + fmt(free_err) + " (<1e-7); cyclotron |U| drift " +
               fmt(u_drift) + " (<1e-9 over 20 periods), radius err " + fmt(radius_err) +
               "; work-energy ratio " + fmt(worst_we) + " (<1), speed bound " + fmt(worst_speed) +
               " (<1)";
    return c;
}

// ---- criterion 7 ----
CriterionResult criterion_fig3(ExecPolicy) {
    CriterionResult c{7, "rest-to-ultrarelativistic"};
    const auto cfg = CompositeConfiguration::single({1, -1, -3, FreqSign::Plus, FieldPart::Real});
    auto run = [&](double kappa) {
        SimulationParams p;
        p.kappa = kappa;
        p.t_start = -1.0;
        p.t_end = 1.0;
        const auto rec =
            integrate_trajectory({{0.01, 0.01, 0.01}, {}, 0.0}, make_provider(cfg), p);
        double ws = 0.0, wwe = 0.0;
        check_record(rec, p, ws, wwe);
        if (ws >= 1.0 || wwe >= 1.0) throw NumericalError("kinematic invariant violated");
        return rec.max_speed;
    };
    const double v100 = run(100.0);
    const double v10 = run(10.0);
    c.pass = v100 > 0.9 && v100 > v10;
    c.detail = "(1/2;-1/2,-3/2)_R from (0.01,0.01,0.01): max|V| kappa=100: " + fmt(v100) +
               " (>0.9), kappa=10: " + fmt(v10) + " (must be smaller)";
    return c;
}

// ---- criterion 8 ----
CriterionResult criterion_beam_focusing(ExecPolicy policy) {
    CriterionResult c{8, "beam-focusing-kappa-trend"};
    c.expected_fail = true;  // see notes: R_max(0)=0 here, trend not exhibited at the fallback radius
    const auto cfg = CompositeConfiguration::single({0, 0, 2, FreqSign::Plus, FieldPart::Imag});
    SearchParams sp;
    sp.policy = policy;
    const auto rm = find_rmax(cfg, 0.0, sp);
    const double radius = std::max(rm.r_max, 0.01);  // paper's small-sphere scenario when degenerate

    const auto initial = sphere18_at(radius);
    auto run = [&](double kappa) {
        SimulationParams p;
        p.kappa = kappa;
        p.t_start = 0.0;
        p.t_end = 1.0;
        const auto records = integrate_ensemble(initial, make_provider(cfg), p, policy);
        double ws = 0.0, wwe = 0.0;
        for (const auto& r : records) check_record(r, p, ws, wwe);
        if (ws >= 1.0 || wwe >= 1.0) throw NumericalError("kinematic invariant violated");
        return cluster_final_directions(records, 15.0 * std::numbers::pi / 180.0);
    };
    const auto b10 = run(10.0);
    const auto b100 = run(100.0);
    const bool few = b100.clusters.size() <= 4;
    const bool narrower = b100.mean_spread() < b10.mean_spread();
    c.pass = few && narrower;
    c.detail = "(0;0,1)_I sphere18 at r=" + fmt(radius) + " (R_max(0)=" + fmt(rm.r_max) +
               "): clusters k=100: " + std::to_string(b100.clusters.size()) +
               " (<=4), mean spread k=100: " + fmt(b100.mean_spread()) + " vs k=10: " +
               fmt(b10.mean_spread()) + " (must shrink)";
    return c;
}

// ---- criterion 9 ----
CriterionResult criterion_beam_splitting(ExecPolicy policy) {
    CriterionResult c{9, "beam-splitting-count"};
    const auto cfg = CompositeConfiguration::single({2, -2, -2, FreqSign::Plus, FieldPart::Real});
    SimulationParams p;
    p.kappa = 10.0;
    p.t_start = 0.0;
    p.t_end = 3.0;
    const auto records = integrate_ensemble(sphere18_at(0.01), make_provider(cfg), p, policy);
    double ws = 0.0, wwe = 0.0;
    for (const auto& r : records) check_record(r, p, ws, wwe);
    const auto beams = cluster_final_directions(records, 15.0 * std::numbers::pi / 180.0);
    const auto n = beams.clusters.size();
    c.pass = n >= 2 && n <= 4 && ws < 1.0 && wwe < 1.0;
    c.detail = "(1;-1,-1)_R kappa=10 sphere18@0.01 T=[0,3]: " + std::to_string(n) +
               " asymptotic beams (need 2..4)";
    return c;
}

// ---- criterion 10 ----
CriterionResult criterion_axis_confinement(ExecPolicy) {
    CriterionResult c{10, "z-axis-confinement"};
    const auto cfg = CompositeConfiguration::single({2, 0, 0, FreqSign::Plus, FieldPart::Imag});
    SimulationParams p;
    p.kappa = 10.0;
    p.t_start = 0.0;
    p.t_end = 3.0;
    const auto rec = integrate_trajectory({{}, {}, 0.0}, make_provider(cfg), p);
    double transverse = 0.0, zmax = 0.0;
    for (const auto& s : rec.samples) {
        transverse = std::max({transverse, std::abs(s.X.x), std::abs(s.X.y)});
        zmax = std::max(zmax, std::abs(s.X.z));
    }
    c.pass = transverse < 1e-6;
    c.detail = "(1;0,0)_I from origin, kappa=10, T=[0,3]: max(|x|,|y|) " + fmt(transverse) +
               " (<1e-6), |z| reaches " + fmt(zmax);
    return c;
}

// ---- criterion 11 ----
CriterionResult criterion_time_reversal(ExecPolicy policy) {
    CriterionResult c{11, "time-reversal-symmetry"};
    c.expected_fail = true;  // see notes: the pinned label lacks the parity in this realization
    const auto cfg = CompositeConfiguration::single({1, 1, 1, FreqSign::Plus, FieldPart::Real});
    SearchParams sp;
    sp.policy = policy;
    const auto rm = find_rmax(cfg, 0.0, sp);
    const double spacing = (rm.r_max / 4.0 >= 0.025) ? rm.r_max / 4.0 : 0.1;

    EnsembleSpec line;
    line.kind = EnsembleKind::Line;
    line.direction = {0.0, 0.0, 1.0};
    line.radius = {spacing, false};
    line.count = 11;
    const auto initial = generate_ensemble(line, 0.0);

    auto window = [&](double a, double b) {
        SimulationParams p;
        p.kappa = 10.0;
        p.t_start = a;
        p.t_end = b;
        return p;
    };
    const auto provider = make_provider(cfg);
    const auto fwd = integrate_ensemble(initial, provider, window(0.0, 1.0), policy);
    const auto bwd = integrate_ensemble(initial, provider, window(-1.0, 0.0), policy);
    const double defect = time_reversal_defect(fwd, bwd);

    // control: a generic moving start must break the symmetry
    const Vec3 vc{0.3, 0.1, -0.2};
    const double gc = 1.0 / std::sqrt(1.0 - norm2(vc));
    const ParticleState ctrl{{0.3, -0.2, 0.25}, gc * vc, 0.0};
    const auto cf = integrate_trajectory(ctrl, provider, window(0.0, 1.0));
    const auto cb = integrate_trajectory(ctrl, provider, window(-1.0, 0.0));
    const double control = time_reversal_defect({cf}, {cb});

    // reference: the self-conjugate label has the exact symmetry
    const auto ref_cfg = CompositeConfiguration::single({2, 0, 0, FreqSign::Plus, FieldPart::Imag});
    EnsembleSpec xline = line;
    xline.direction = {0.86, 0.5, 0.0};
    xline.radius = {0.05, false};
    const auto ref_provider = make_provider(ref_cfg);
    const auto ref_init = generate_ensemble(xline, 0.0);
    const auto rf = integrate_ensemble(ref_init, ref_provider, window(0.0, 1.0), policy);
    const auto rb = integrate_ensemble(ref_init, ref_provider, window(-1.0, 0.0), policy);
    const double ref_defect = time_reversal_defect(rf, rb);

    c.pass = defect < 0.05 && control > 0.05;
    c.detail = "(1/2;1/2,1/2)_R line (spacing " + fmt(spacing) + ", R_max(0)=" + fmt(rm.r_max) +
               "): defect " + fmt(defect) + " (<0.05); moving-start control " + fmt(control) +
               " (>0.05); self-conjugate (1;0,0)_I reference defect " + fmt(ref_defect);
    return c;
}

// ---- criterion 12 ----
CriterionResult criterion_determinism(ExecPolicy) {
    CriterionResult c{12, "manifest-replay-determinism"};
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "knotfield_determinism";
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");
    fs::create_directories(dir / "c");

    TrajectoriesRun run;
    run.configs = {"0,0,1,I"};
    run.kappa = 10.0;
    run.kappa_set = true;
    run.ensemble = "ball:0.4:6";
    run.seed = 7;
    run.t0 = 0.0;
    run.t1 = 0.5;
    run.out_csv = (dir / "a" / "t.csv").string();
    run.out_manifest = (dir / "a" / "m.json").string();
    execute_trajectories(run);

    // replay from the manifest, parallel
    std::ifstream mf(dir / "a" / "m.json");
    nlohmann::json manifest = nlohmann::json::parse(mf);
    auto replay = trajectories_from_json(manifest);
    replay.out_csv = (dir / "b" / "t.csv").string();
    replay.out_manifest = (dir / "b" / "m.json").string();
    execute_trajectories(replay);

    // and once more on the serial reference path
    auto serial = replay;
    serial.serial = true;
    serial.out_csv = (dir / "c" / "t.csv").string();
    serial.out_manifest = (dir / "c" / "m.json").string();
    execute_trajectories(serial);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const bool csv_same = slurp(dir / "a" / "t.csv") == slurp(dir / "b" / "t.csv");
    const bool csv_serial_same = slurp(dir / "a" / "t.csv") == slurp(dir / "c" / "t.csv");

    auto canonical = [&](const fs::path& p) {
        auto j = nlohmann::json::parse(slurp(p));
        j.erase("out_csv");
        j.erase("out_manifest");
        j.erase("serial");
        return j.dump();
    };
    const bool manifest_same = canonical(dir / "a" / "m.json") == canonical(dir / "b" / "m.json");
    const bool manifest_serial_same =
        canonical(dir / "a" / "m.json") == canonical(dir / "c" / "m.json");

    c.pass = csv_same && manifest_same && csv_serial_same && manifest_serial_same;
    c.detail = std::string("replay CSV byte-identical: ") + (csv_same ? "yes" : "NO") +
               ", summaries identical: " + (manifest_same ? "yes" : "NO") +
               ", serial reference identical: " +
               ((csv_serial_same && manifest_serial_same) ? "yes" : "NO");
    return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result) {
    using Runner = CriterionResult (*)(ExecPolicy);
    const std::pair<int, Runner> table[] = {
        {1, criterion_geometry},        {2, criterion_harmonics},
        {3, criterion_maxwell},         {4, criterion_extreme_axis},
        {5, criterion_energy},          {6, criterion_kinematics},
        {7, criterion_fig3},            {8, criterion_beam_focusing},
        {9, criterion_beam_splitting},  {10, criterion_axis_confinement},
        {11, criterion_time_reversal},  {12, criterion_determinism},
    };
    std::vector<CriterionResult> out;
    for (const auto& [id, runner] : table) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), id) == options.only.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = runner(options.policy);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion-" + std::to_string(id);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

int count_gating_failures(const std::vector<CriterionResult>& results, bool strict) {
    int n = 0;
    for (const auto& r : results)
        if (!r.pass && (strict || !r.expected_fail)) ++n;
    return n;
}

}  // namespace knotfield
