#include "knotfield/tracing.hpp"

#include <cmath>
#include <string>

#include "knotfield/errors.hpp"

namespace knotfield {

namespace {

Vec3 field_vector(const CompositeConfiguration& config, double t, const Vec3& p, LineKind kind) {
    const auto f = field_strength(config, {t, p.x, p.y, p.z});
    return kind == LineKind::Electric ? f.E : f.B;
}

}  // namespace

FieldLine trace_line(const CompositeConfiguration& config, double t, const Vec3& seed,
                     LineKind kind, const TraceParams& params) {
    config.validate();
    if (!(params.step > 0.0) || !(params.max_length > 0.0))
        throw ValidationError("trace_line: step and max_length must be positive");

    auto unit_field = [&](const Vec3& p, bool& ok) {
        const Vec3 f = field_vector(config, t, p, kind);
        const double n = norm(f);
        ok = n > params.min_field;
        return ok ? f / n : Vec3{};
    };

    bool ok = false;
    Vec3 d0 = unit_field(seed, ok);
    if (!ok)
        throw NumericalError("trace_line: field magnitude below " +
                             std::to_string(params.min_field) + " at the seed point");
    (void)d0;

    FieldLine line;
    line.kind = kind;
    line.points.push_back(seed);

    const double h = params.step;
    Vec3 x = seed;
    double s = 0.0;
    while (s < params.max_length) {
        const Vec3 k1 = unit_field(x, ok);
        if (!ok) break;
        const Vec3 k2 = unit_field(x + 0.5 * h * k1, ok);
        if (!ok) break;
        const Vec3 k3 = unit_field(x + 0.5 * h * k2, ok);
        if (!ok) break;
        const Vec3 k4 = unit_field(x + h * k3, ok);
        if (!ok) break;
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s += h;
        line.points.push_back(x);
        if (s > 10.0 * h && norm(x - seed) < params.closure_tol) {
            line.closed = true;
            break;
        }
    }
    line.arc_length = s;
    return line;
}

std::vector<FieldLine> trace_lines(const CompositeConfiguration& config, double t,
                                   const std::vector<Vec3>& seeds, LineKind kind,
                                   const TraceParams& params, ExecPolicy policy) {
    std::vector<FieldLine> out(seeds.size());
    std::vector<std::string> failures(seeds.size());
    parallel_for(long(seeds.size()), policy, [&](long i) {
        try {
            out[i] = trace_line(config, t, seeds[i], kind, params);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            throw NumericalError("seed " + std::to_string(i) + ": " + failures[i]);
    return out;
}

}  // namespace knotfield
