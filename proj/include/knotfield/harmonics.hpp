#ifndef KNOTFIELD_HARMONICS_HPP
#define KNOTFIELD_HARMONICS_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "knotfield/cplx.hpp"
#include "knotfield/errors.hpp"

namespace knotfield {

// Left-right hyperspherical harmonics on S^3, realized as normalized Wigner
// D-matrix elements through the group identification g(omega). Spins are
// stored as doubled integers so half-integer labels stay exact: j = two_j/2.
//
//   g(omega) = omega_4 1 - i omega_a sigma_a
//   Y_{j;m,n}(omega) = sqrt((2j+1) / (2 pi^2)) D^j_{-m,n}(g(omega))
//
// The row index carries -m so that the left-translation weight of Y is +m
// while the right-translation weight is +n; with this choice the extreme
// labels (j; +-j, +-(j+1)) are the ones whose fields vanish on the z-axis.
// Phases follow the polynomial (Condon-Shortley compatible) realization and
// are validated by the orthonormality and Laplacian tests, not by matching
// any external table.

struct SpinLabel {
    int two_j = 0, two_m = 0, two_n = 0;

    bool admissible() const {
        if (two_j < 0) return false;
        if (std::abs(two_m) > two_j || std::abs(two_n) > two_j) return false;
        if ((two_m & 1) != (two_j & 1) || (two_n & 1) != (two_j & 1)) return false;
        return true;
    }
    void validate() const {
        if (!admissible())
            throw ValidationError("SpinLabel (" + std::to_string(two_j) + ";" +
                                  std::to_string(two_m) + "," + std::to_string(two_n) +
                                  ")/2 is not admissible");
    }
};

namespace detail {

inline double factorial(int n) {
    static const auto table = [] {
        std::array<double, 65> f{};
        f[0] = 1.0;
        for (int i = 1; i < 65; ++i) f[i] = f[i - 1] * i;
        return f;
    }();
    return table[n];
}

}  // namespace detail

// SU(2) element attached to a point of S^3; c = -conj(b), d = conj(a).
template <class S>
struct Su2Point {
    Cplx<S> a, b, c, d;
};

template <class S>
Su2Point<S> su2_from_omega(const std::array<S, 4>& w) {
    Su2Point<S> g;
    g.a = Cplx<S>(w[3], -w[2]);
    g.b = Cplx<S>(-w[1], -w[0]);
    g.c = Cplx<S>(w[1], -w[0]);
    g.d = Cplx<S>(w[3], w[2]);
    return g;
}

// Wigner D matrix element D^j_{r,c}(g) by the polynomial-realization sum.
// Row and column are doubled weights; entries outside the weight lattice are
// zero. Supports two_j up to 32 before the factorial table saturates.
template <class S>
Cplx<S> wigner_d(int two_j, int two_r, int two_c, const Su2Point<S>& g) {
    if (std::abs(two_r) > two_j || std::abs(two_c) > two_j) return Cplx<S>(S(0.0), S(0.0));
    const int jr = (two_j + two_r) / 2, jmr = (two_j - two_r) / 2;
    const int jc = (two_j + two_c) / 2, jmc = (two_j - two_c) / 2;
    const double pref = std::sqrt(detail::factorial(jr) * detail::factorial(jmr) *
                                  detail::factorial(jc) * detail::factorial(jmc));
    const int rc = (two_r + two_c) / 2;
    const int pmin = std::max(0, rc);
    const int pmax = std::min(jr, jc);
    Cplx<S> sum(S(0.0), S(0.0));
    for (int p = pmin; p <= pmax; ++p) {
        const int eb = jr - p, ec = jc - p, ed = p - rc;
        const double den = detail::factorial(p) * detail::factorial(eb) *
                           detail::factorial(ec) * detail::factorial(ed);
        const Cplx<S> term =
            pow_int(g.a, p) * pow_int(g.b, eb) * pow_int(g.c, ec) * pow_int(g.d, ed);
        sum = sum + (1.0 / den) * term;
    }
    return pref * sum;
}

template <class S>
Cplx<S> harmonic_unchecked(const SpinLabel& l, const std::array<S, 4>& omega) {
    const double norm = std::sqrt((l.two_j + 1) / (2.0 * std::numbers::pi * std::numbers::pi));
    return norm * wigner_d(l.two_j, -l.two_m, l.two_n, su2_from_omega(omega));
}

// ---- checked double-precision entry points ----

struct HarmonicValue {
    double re = 0.0, im = 0.0;
};

inline void require_unit(const std::array<double, 4>& w, double tol) {
    const double n2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
    if (std::abs(n2 - 1.0) > tol)
        throw ValidationError("omega is not on the unit three-sphere");
}

inline Su2Point<double> su2_point(const std::array<double, 4>& omega) {
    require_unit(omega, 1e-9);
    return su2_from_omega(omega);
}

inline HarmonicValue harmonic(const SpinLabel& label, const std::array<double, 4>& omega) {
    label.validate();
    require_unit(omega, 1e-9);
    const auto y = harmonic_unchecked(label, omega);
    return {y.re, y.im};
}

}  // namespace knotfield

#endif
