#include "knotfield/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "knotfield/errors.hpp"

namespace knotfield {

double BeamReport::mean_spread() const {
    if (clusters.empty()) return 0.0;
    double s = 0.0;
    for (const auto& c : clusters) s += c.angular_spread;
    return s / clusters.size();
}

BeamReport cluster_final_directions(const std::vector<TrajectoryRecord>& records,
                                    double angle_threshold_rad, double speed_floor) {
    BeamReport report;
    report.total = int(records.size());

    struct Working {
        Vec3 resultant;  // sum of member directions
        std::vector<int> members;
    };
    std::vector<Working> clusters;
    std::vector<Vec3> dirs;
    int slow = 0;
    for (int i = 0; i < int(records.size()); ++i) {
        const auto& r = records[i];
        const double v_end = r.samples.empty() ? 0.0
                                               : norm(r.back().U) / std::sqrt(1.0 + norm2(r.back().U));
        if (v_end <= speed_floor) {
            ++slow;
            continue;
        }
        dirs.push_back(r.final_direction);
        clusters.push_back({r.final_direction, {i}});
    }
    report.unclustered_fraction = records.empty() ? 0.0 : double(slow) / records.size();

    auto mean_dir = [](const Working& w) { return normalized(w.resultant); };
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::max();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const double a = angle_between(mean_dir(clusters[i]), mean_dir(clusters[j]));
                if (a < best) {
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        if (best >= angle_threshold_rad) break;
        auto& dst = clusters[bi];
        auto& src = clusters[bj];
        dst.resultant += src.resultant;
        dst.members.insert(dst.members.end(), src.members.begin(), src.members.end());
        clusters.erase(clusters.begin() + bj);
    }

    for (auto& w : clusters) {
        std::sort(w.members.begin(), w.members.end());
        BeamCluster c;
        c.mean_direction = mean_dir(w);
        double ss = 0.0;
        for (int idx : w.members)
            ss += std::pow(angle_between(records[idx].final_direction, c.mean_direction), 2);
        c.angular_spread = std::sqrt(ss / w.members.size());
        c.members = std::move(w.members);
        report.clusters.push_back(std::move(c));
    }
    std::sort(report.clusters.begin(), report.clusters.end(),
              [](const BeamCluster& a, const BeamCluster& b) { return a.members[0] < b.members[0]; });
    return report;
}

namespace {

std::vector<Vec3> resample_uniform(const std::vector<TrajectorySample>& samples, int n) {
    std::vector<Vec3> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.push_back(s.X);
    std::vector<double> arc(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) arc[i] = arc[i - 1] + norm(pts[i] - pts[i - 1]);
    const double L = arc.back();
    std::vector<Vec3> out(n);
    if (pts.size() < 2 || L == 0.0) {
        std::fill(out.begin(), out.end(), pts.empty() ? Vec3{} : pts.front());
        return out;
    }
    std::size_t k = 1;
    for (int i = 0; i < n; ++i) {
        const double s = L * i / (n - 1);
        while (k + 1 < pts.size() && arc[k] < s) ++k;
        const double seg = arc[k] - arc[k - 1];
        const double f = seg > 0.0 ? (s - arc[k - 1]) / seg : 0.0;
        out[i] = pts[k - 1] + f * (pts[k] - pts[k - 1]);
    }
    return out;
}

double hausdorff(const std::vector<Vec3>& P, const std::vector<Vec3>& Q) {
    auto directed = [](const std::vector<Vec3>& A, const std::vector<Vec3>& B) {
        double worst = 0.0;
        for (const auto& a : A) {
            double best = std::numeric_limits<double>::max();
            for (const auto& b : B) best = std::min(best, norm2(a - b));
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(P, Q), directed(Q, P));
}

constexpr int kResamplePoints = 256;

}  // namespace

double time_reversal_defect(const std::vector<TrajectoryRecord>& forward,
                            const std::vector<TrajectoryRecord>& backward) {
    if (forward.size() != backward.size() || forward.empty())
        throw ValidationError("time_reversal_defect: ensembles must be non-empty and matched");
    double dist_sum = 0.0, len_sum = 0.0;
    for (std::size_t i = 0; i < forward.size(); ++i) {
        // the time reflection T -> -T leaves the position point set unchanged
        const auto P = resample_uniform(forward[i].samples, kResamplePoints);
        const auto Q = resample_uniform(backward[i].samples, kResamplePoints);
        dist_sum += hausdorff(P, Q);
        len_sum += forward[i].path_length();
    }
    const double mean_len = len_sum / forward.size();
    if (mean_len == 0.0) return 0.0;
    return (dist_sum / forward.size()) / mean_len;
}

ResidualStats maxwell_residual_scan(const FieldSampler& field, const ResidualScanSpec& spec) {
    if (spec.events < 1) throw ValidationError("residual scan: need at least one event");
    // counter-based event draw, fixed order
    auto u01 = [&](std::uint64_t k) {
        auto mix = [](std::uint64_t x) {
            x += 0x9e3779b97f4a7c15ull;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            return x ^ (x >> 31);
        };
        return double(mix(spec.seed ^ mix(k)) >> 11) * 0x1.0p-53;
    };
    std::vector<MinkowskiEvent> events(spec.events);
    for (int i = 0; i < spec.events; ++i) {
        const std::uint64_t b = std::uint64_t(i) * 4;
        events[i] = {spec.t_min + (spec.t_max - spec.t_min) * u01(b),
                     spec.box_half_width * (2.0 * u01(b + 1) - 1.0),
                     spec.box_half_width * (2.0 * u01(b + 2) - 1.0),
                     spec.box_half_width * (2.0 * u01(b + 3) - 1.0)};
    }

    const double h = spec.fd_step;
    std::vector<double> rel(spec.events, 0.0);
    parallel_for(spec.events, spec.policy, [&](long i) {
        const MinkowskiEvent ev = events[i];
        // dE[mu][comp], dB[mu][comp]: 4th-order central differences
        double dE[4][3], dB[4][3];
        for (int mu = 0; mu < 4; ++mu) {
            auto shifted = [&](double s) {
                MinkowskiEvent e = ev;
                (mu == 0 ? e.t : mu == 1 ? e.x : mu == 2 ? e.y : e.z) += s * h;
                return field(e);
            };
            const auto p2 = shifted(2.0), p1 = shifted(1.0), m1 = shifted(-1.0), m2 = shifted(-2.0);
            for (int c = 0; c < 3; ++c) {
                dE[mu][c] = (-p2.E[c] + 8.0 * p1.E[c] - 8.0 * m1.E[c] + m2.E[c]) / (12.0 * h);
                dB[mu][c] = (-p2.B[c] + 8.0 * p1.B[c] - 8.0 * m1.B[c] + m2.B[c]) / (12.0 * h);
            }
        }
        const auto f0 = field(ev);
        const double scale = std::max({norm(f0.E), norm(f0.B), 1e-12});
        const double divE = dE[1][0] + dE[2][1] + dE[3][2];
        const double divB = dB[1][0] + dB[2][1] + dB[3][2];
        const Vec3 curlE{dE[2][2] - dE[3][1], dE[3][0] - dE[1][2], dE[1][1] - dE[2][0]};
        const Vec3 curlB{dB[2][2] - dB[3][1], dB[3][0] - dB[1][2], dB[1][1] - dB[2][0]};
        const Vec3 faraday = curlE + Vec3{dB[0][0], dB[0][1], dB[0][2]};
        const Vec3 ampere = curlB - Vec3{dE[0][0], dE[0][1], dE[0][2]};
        rel[i] = std::max({std::abs(divE), std::abs(divB), norm(faraday), norm(ampere)}) / scale;
    });

    ResidualStats out;
    out.events = spec.events;
    out.fd_step = h;
    for (double r : rel) {
        out.max_rel = std::max(out.max_rel, r);
        out.mean_rel += r;
    }
    out.mean_rel /= spec.events;
    return out;
}

ResidualStats maxwell_residual_scan(const CompositeConfiguration& config,
                                    const ResidualScanSpec& spec) {
    config.validate();
    return maxwell_residual_scan(
        [&config](const MinkowskiEvent& ev) { return field_strength(config, ev); }, spec);
}

std::vector<BallEnergy> energy_budget(const CompositeConfiguration& config,
                                      const std::vector<double>& times,
                                      const BallQuadSpec& spec) {
    if (spec.radius < 5.0)
        throw ValidationError("energy_budget: ball radius must be at least 5");
    std::vector<BallEnergy> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(ball_energy(config, t, spec));
    return out;
}

std::vector<KappaRow> kappa_sweep(const CompositeConfiguration& config,
                                  const std::vector<ParticleState>& initial,
                                  const SimulationParams& base_params,
                                  const std::vector<double>& kappas,
                                  double cluster_threshold_rad, ExecPolicy policy) {
    if (kappas.empty()) throw ValidationError("kappa_sweep: empty kappa list");
    const auto provider = make_provider(config);
    std::vector<KappaRow> rows;
    for (double kappa : kappas) {
        SimulationParams p = base_params;
        p.kappa = kappa;
        const auto records = integrate_ensemble(initial, provider, p, policy);
        KappaRow row;
        row.kappa = kappa;
        for (const auto& r : records) row.max_speed = std::max(row.max_speed, r.max_speed);
        row.beams = cluster_final_directions(records, cluster_threshold_rad);
        rows.push_back(std::move(row));
    }
    return rows;
}

double mean_final_speed(const std::vector<TrajectoryRecord>& records) {
    if (records.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : records) {
        const double g = std::sqrt(1.0 + norm2(r.back().U));
        s += norm(r.back().U) / g;
    }
    return s / records.size();
}

}  // namespace knotfield
