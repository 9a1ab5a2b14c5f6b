#include "knotfield/fields.hpp"

#include <cmath>

#include "knotfield/errors.hpp"
#include "knotfield/optim.hpp"

namespace knotfield {

void ConfigurationLabel::validate() const {
    if (!admissible())
        throw ValidationError("configuration label " + str() +
                              " is not admissible: need |m| <= j, |n| <= j+1, matching parity");
}

std::string ConfigurationLabel::str() const {
    auto half = [](int two_v) {
        if (two_v % 2 == 0) return std::to_string(two_v / 2);
        return std::to_string(two_v) + "/2";
    };
    std::string s = "(" + half(two_j) + ";" + half(two_m) + "," + half(two_n) + ")";
    s += (part == FieldPart::Real) ? "_R" : "_I";
    if (freq == FreqSign::Minus) s += "-";
    return s;
}

void CompositeConfiguration::validate() const {
    if (terms.empty()) throw ValidationError("composite configuration has no terms");
    for (const auto& t : terms) {
        t.label.validate();
        if (!std::isfinite(t.amplitude))
            throw ValidationError("non-finite amplitude in composite configuration");
    }
}

XCoefficients x_coefficients(const ConfigurationLabel& label, double tau,
                             const std::array<double, 4>& omega) {
    label.validate();
    require_unit(omega, 1e-9);
    const auto xt = x_triple<double>(label.two_j, label.two_m, label.two_n, label.freq, tau, omega);
    return {to_std(xt.plus), to_std(xt.three), to_std(xt.minus)};
}

std::array<std::complex<double>, 4> gauge_potential(const CompositeConfiguration& config,
                                                    const MinkowskiEvent& ev) {
    config.validate();
    const auto chain = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);
    std::array<std::complex<double>, 4> out{};
    for (const auto& term : config.terms) {
        const auto a = label_potential<double>(term.label, chain);
        for (int mu = 0; mu < 4; ++mu) out[mu] += term.amplitude * to_std(a[mu]);
    }
    return out;
}

std::array<double, 4> real_potential(const CompositeConfiguration& config,
                                     const MinkowskiEvent& ev) {
    const auto chain = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);
    std::array<double, 4> out{};
    for (const auto& term : config.terms) {
        const auto a = label_potential<double>(term.label, chain);
        for (int mu = 0; mu < 4; ++mu)
            out[mu] += term.amplitude *
                       (term.label.part == FieldPart::Real ? a[mu].re : a[mu].im);
    }
    return out;
}

EMFieldSample field_strength(const CompositeConfiguration& config, const MinkowskiEvent& ev) {
    const auto chain = cylinder_chain<Dual4>(Dual4::seed(ev.t, 0), Dual4::seed(ev.x, 1),
                                             Dual4::seed(ev.y, 2), Dual4::seed(ev.z, 3));
    EMFieldSample out{};
    for (const auto& term : config.terms) {
        const auto a = label_potential<Dual4>(term.label, chain);
        // F_{mu nu} = d_mu A_nu - d_nu A_mu from the gradient slots;
        // E_i = -F_{0i}, B = curl of the spatial part.
        auto part_of = [&](const Cplx<Dual4>& q) -> const Dual4& {
            return term.label.part == FieldPart::Real ? q.re : q.im;
        };
        const double amp = term.amplitude;
        for (int i = 0; i < 3; ++i)
            out.E[i] += amp * (part_of(a[0]).g[1 + i] - part_of(a[1 + i]).g[0]);
        out.B.x += amp * (part_of(a[3]).g[2] - part_of(a[2]).g[3]);
        out.B.y += amp * (part_of(a[1]).g[3] - part_of(a[3]).g[1]);
        out.B.z += amp * (part_of(a[2]).g[1] - part_of(a[1]).g[2]);
    }
    return out;
}

double energy_density(const CompositeConfiguration& config, const MinkowskiEvent& ev) {
    return energy_density(field_strength(config, ev));
}

RmaxResult find_rmax(const CompositeConfiguration& config, double t, const SearchParams& search) {
    config.validate();
    if (search.grid_n < 2 || search.hi.x <= search.lo.x || search.hi.y <= search.lo.y ||
        search.hi.z <= search.lo.z)
        throw ValidationError("find_rmax: invalid search box or resolution");

    const int n = search.grid_n;
    const long total = long(n) * n * n;
    auto point = [&](long l) -> Vec3 {
        const long iz = l % n, iy = (l / n) % n, ix = l / (long(n) * n);
        return {search.lo.x + (search.hi.x - search.lo.x) * double(ix) / (n - 1),
                search.lo.y + (search.hi.y - search.lo.y) * double(iy) / (n - 1),
                search.lo.z + (search.hi.z - search.lo.z) * double(iz) / (n - 1)};
    };

    // Per-worker best, merged in slab order: ties resolve to the smallest
    // linear index independent of the thread count.
    const int workers = (search.policy == ExecPolicy::Parallel) ? worker_count() : 1;
    const long chunk = (total + workers - 1) / workers;
    std::vector<std::pair<double, long>> best(workers, {-1.0, -1});
    parallel_for(workers, search.policy, [&](long w) {
        const long b0 = w * chunk, b1 = std::min(total, b0 + chunk);
        double bu = -1.0;
        long bl = -1;
        for (long l = b0; l < b1; ++l) {
            const Vec3 p = point(l);
            const double u = energy_density(config, {t, p.x, p.y, p.z});
            if (u > bu) {
                bu = u;
                bl = l;
            }
        }
        best[w] = {bu, bl};
    });
    double bu = -1.0;
    long bl = -1;
    for (const auto& [u, l] : best)
        if (u > bu) {
            bu = u;
            bl = l;
        }

    if (bu < search.flat_threshold)
        throw NumericalError("find_rmax: energy landscape is flat (max below threshold)");

    const Vec3 p0 = point(bl);
    const double cell = (search.hi.x - search.lo.x) / (n - 1);
    auto neg_density = [&](const std::vector<double>& x) {
        return -energy_density(config, {t, x[0], x[1], x[2]});
    };
    const auto r =
        nelder_mead(neg_density, {p0.x, p0.y, p0.z}, 0.5 * cell, search.position_tol, 4000);
    const Vec3 xm{r.x[0], r.x[1], r.x[2]};
    return {norm(xm), -r.fmin, xm};
}

void GridSpec::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (n[a] < 0) throw ValidationError("grid spec: negative sample count");
        if (n[a] > 1 && hi[a] <= lo[a])
            throw ValidationError("grid spec: hi must exceed lo on sampled axes");
    }
}

std::vector<GridSample> field_on_grid(const CompositeConfiguration& config, double t,
                                      const GridSpec& grid, ExecPolicy policy) {
    config.validate();
    grid.validate();
    std::vector<GridSample> out(grid.total());
    parallel_for(grid.total(), policy, [&](long l) {
        const Vec3 p = grid.point(l);
        const auto f = field_strength(config, {t, p.x, p.y, p.z});
        out[l] = {p, f, energy_density(f)};
    });
    return out;
}

}  // namespace knotfield
