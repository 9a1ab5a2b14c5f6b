#ifndef KNOTFIELD_TRACING_HPP
#define KNOTFIELD_TRACING_HPP

#include <vector>

#include "knotfield/exec.hpp"
#include "knotfield/fields.hpp"
#include "knotfield/vec.hpp"

namespace knotfield {

// Field-line tracing at fixed time: fixed-step RK4 on dx/ds = F(x)/|F(x)|,
// so the step controls geometry rather than field magnitude. A trace ends at
// max_length, on field underflow, or when it returns to its seed (closure).

enum class LineKind { Electric, Magnetic };

struct TraceParams {
    double step = 1e-3;
    double max_length = 50.0;
    double closure_tol = 1e-2;
    double min_field = 1e-12;
};

struct FieldLine {
    std::vector<Vec3> points;
    LineKind kind = LineKind::Electric;
    bool closed = false;
    double arc_length = 0.0;
};

FieldLine trace_line(const CompositeConfiguration& config, double t, const Vec3& seed,
                     LineKind kind, const TraceParams& params = {});

// Independent traces from several seeds.
std::vector<FieldLine> trace_lines(const CompositeConfiguration& config, double t,
                                   const std::vector<Vec3>& seeds, LineKind kind,
                                   const TraceParams& params = {},
                                   ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace knotfield

#endif
