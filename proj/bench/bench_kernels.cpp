// Wall-clock comparison of the serial reference path against the OpenMP path
// for the three data-parallel kernels: grid field evaluation, ensemble
// trajectory integration, and the energy-maximum scan.

#include <chrono>
#include <cstdio>

#include "knotfield/analysis.hpp"
#include "knotfield/dynamics.hpp"
#include "knotfield/fields.hpp"

using namespace knotfield;

namespace {

template <class F>
double time_of(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3f s   openmp %8.3f s   speedup %5.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
    std::printf("knotfield kernel benchmark (%d workers)\n\n", worker_count());

    const auto cfg = CompositeConfiguration::single({2, -2, -2, FreqSign::Plus, FieldPart::Real});

    {
        GridSpec grid;
        grid.n = {41, 41, 41};
        double checksum = 0.0;
        const double ts = time_of([&] {
            const auto s = field_on_grid(cfg, 0.5, grid, ExecPolicy::Serial);
            checksum += s.back().density;
        });
        const double tp = time_of([&] {
            const auto s = field_on_grid(cfg, 0.5, grid, ExecPolicy::Parallel);
            checksum += s.back().density;
        });
        report("field_on_grid 41^3", ts, tp);
        (void)checksum;
    }

    {
        EnsembleSpec spec;
        spec.kind = EnsembleKind::Sphere18;
        spec.radius = {0.3, false};
        const auto initial = generate_ensemble(spec, 0.0);
        SimulationParams p;
        p.kappa = 10.0;
        p.t_start = 0.0;
        p.t_end = 2.0;
        const auto provider = make_provider(cfg);
        const double ts =
            time_of([&] { integrate_ensemble(initial, provider, p, ExecPolicy::Serial); });
        const double tp =
            time_of([&] { integrate_ensemble(initial, provider, p, ExecPolicy::Parallel); });
        report("integrate_ensemble 18x[0,2]", ts, tp);
    }

    {
        SearchParams sp;
        sp.grid_n = 41;
        sp.policy = ExecPolicy::Serial;
        const double ts = time_of([&] { find_rmax(cfg, 0.0, sp); });
        sp.policy = ExecPolicy::Parallel;
        const double tp = time_of([&] { find_rmax(cfg, 0.0, sp); });
        report("find_rmax scan 41^3", ts, tp);
    }

    {
        ResidualScanSpec spec;
        spec.events = 100;
        spec.policy = ExecPolicy::Serial;
        const double ts = time_of([&] { maxwell_residual_scan(cfg, spec); });
        spec.policy = ExecPolicy::Parallel;
        const double tp = time_of([&] { maxwell_residual_scan(cfg, spec); });
        report("maxwell_residual_scan 100", ts, tp);
    }

    return 0;
}
