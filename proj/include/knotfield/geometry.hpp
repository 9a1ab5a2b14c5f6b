#ifndef KNOTFIELD_GEOMETRY_HPP
#define KNOTFIELD_GEOMETRY_HPP

#include <array>
#include <cmath>

#include "knotfield/dual.hpp"
#include "knotfield/errors.hpp"

namespace knotfield {

// Conformal map between Minkowski space and the Lorentzian cylinder over S^3.
// All lengths are measured in units of the de Sitter radius, which is fixed
// to 1 and never appears explicitly.
//
//   sigma = 2 / sqrt(4 t^2 + (r^2 - t^2 + 1)^2)
//   tau   = atan2(2t, r^2 + 1 - t^2)            in (-pi, pi), sign(tau) = sign(t)
//   omega = (sigma x, sigma y, sigma z, sigma (r^2 - t^2 - 1)/2)   on unit S^3
//
// The pulled-back coframe {dtau, e^a} follows from the self-dual 't Hooft
// symbol; e^a = -eta^a_{BC} omega_B d omega_C reduces to the closed forms
// below. The pulled-back round metric satisfies
//   sum_a e^a (x) e^a - dtau (x) dtau = sigma^2 eta,     eta = diag(-1,1,1,1).

struct MinkowskiEvent {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

struct CylinderPoint {
    double tau = 0.0;
    std::array<double, 4> omega{0.0, 0.0, 0.0, 0.0};
};

// Coefficient arrays of the one-forms against (dt, dx, dy, dz).
struct CoframeAtEvent {
    std::array<double, 4> dtau{};
    std::array<std::array<double, 4>, 3> e{};
};

// Everything the field engine needs at one event, generic over the scalar so
// the same expressions produce values (double) or values-plus-gradients
// (Dual4).
template <class S>
struct CylinderChain {
    S sigma;
    S tau;
    std::array<S, 4> omega;
    std::array<S, 4> dtau;
    std::array<std::array<S, 4>, 3> frame;  // frame[a][mu] = e^a_mu
};

template <class S>
CylinderChain<S> cylinder_chain(const S& t, const S& x, const S& y, const S& z) {
    CylinderChain<S> c;
    const S r2 = x * x + y * y + z * z;
    const S q = r2 - t * t + 1.0;
    c.sigma = 2.0 / sqrt(4.0 * (t * t) + q * q);
    c.tau = atan2(2.0 * t, r2 + 1.0 - t * t);

    c.omega[0] = c.sigma * x;
    c.omega[1] = c.sigma * y;
    c.omega[2] = c.sigma * z;
    c.omega[3] = c.sigma * (r2 - t * t - 1.0) * 0.5;

    const S s2 = c.sigma * c.sigma;
    const std::array<S, 3> xv{x, y, z};

    c.dtau[0] = s2 * 0.5 * (t * t + r2 + 1.0);
    for (int k = 0; k < 3; ++k) c.dtau[1 + k] = -(s2 * t * xv[k]);

    const S half_tmr = 0.5 * (t * t - r2 + 1.0);
    for (int a = 0; a < 3; ++a) {
        c.frame[a][0] = s2 * t * xv[a];
        for (int k = 0; k < 3; ++k) {
            S coef = xv[a] * xv[k];
            if (a == k) coef = coef + half_tmr;
            // eps_{ajk} x_j: only j = 3-a-k survives; even permutation iff k = (a+2) mod 3
            if (a != k) {
                const int jidx = 3 - a - k;
                const double sign = (k == (a + 2) % 3) ? 1.0 : -1.0;
                coef = coef + sign * xv[jidx];
            }
            c.frame[a][1 + k] = -(s2 * coef);
        }
    }
    return c;
}

inline double sigma(const MinkowskiEvent& ev) {
    const double r2 = ev.x * ev.x + ev.y * ev.y + ev.z * ev.z;
    const double q = r2 - ev.t * ev.t + 1.0;
    return 2.0 / std::sqrt(4.0 * ev.t * ev.t + q * q);
}

inline CylinderPoint to_cylinder(const MinkowskiEvent& ev) {
    const auto c = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);
    return {c.tau, c.omega};
}

inline CoframeAtEvent coframe(const MinkowskiEvent& ev) {
    const auto c = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);
    return {c.dtau, c.frame};
}

}  // namespace knotfield

#endif
