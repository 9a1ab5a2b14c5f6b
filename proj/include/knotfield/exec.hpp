#ifndef KNOTFIELD_EXEC_HPP
#define KNOTFIELD_EXEC_HPP

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace knotfield {

// Every data-parallel kernel takes an ExecPolicy. Serial is the reference
// path used by the tests to pin down the parallel results bit for bit.
enum class ExecPolicy { Serial, Parallel };

// KNOTFIELD_THREADS caps the OpenMP team size; 0 means library default.
inline int thread_cap() {
    static const int cap = [] {
        if (const char* s = std::getenv("KNOTFIELD_THREADS")) {
            int v = std::atoi(s);
            if (v > 0) return v;
        }
        return 0;
    }();
    return cap;
}

inline int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (thread_cap() > 0 && thread_cap() < n) n = thread_cap();
    return n;
#else
    return 1;
#endif
}

// Index-parallel map. Results must be written to disjoint slots so the
// outcome is identical for any thread count.
template <class F>
void parallel_for(long n, ExecPolicy policy, F&& body) {
#ifdef _OPENMP
    if (policy == ExecPolicy::Parallel) {
        const int nt = worker_count();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)policy;
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace knotfield

#endif
