#ifndef KNOTFIELD_QUADRATURE_HPP
#define KNOTFIELD_QUADRATURE_HPP

#include <utility>
#include <vector>

#include "knotfield/exec.hpp"
#include "knotfield/fields.hpp"

namespace knotfield {

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
struct GaussRule {
    std::vector<double> nodes, weights;
};
GaussRule gauss_legendre(int n);

struct BallQuadSpec {
    double radius = 10.0;
    int n_radial = 64;
    int n_polar = 32;    // Gauss-Legendre in cos(theta)
    int n_azimuth = 32;  // uniform in phi (periodic, spectrally exact)
    ExecPolicy policy = ExecPolicy::Parallel;
};

struct BallEnergy {
    double total = 0.0;
    double outer_shell = 0.0;  // contribution of the outermost radial node
    // crude tail bound past the ball, assuming the integrand keeps falling
    // at least as fast as r^-8 (so the shell integral falls like r^-6)
    double tail_estimate = 0.0;
};

// Total field energy Int (1/2)(E^2 + B^2) d^3x over a ball about the origin.
// The reduction order is fixed (per-radial-node partials summed serially) so
// results are identical for any thread count.
BallEnergy ball_energy(const CompositeConfiguration& config, double t, const BallQuadSpec& spec);

// S^3 product quadrature: Gauss-Legendre in cos(beta), uniform in the two
// periodic Euler angles. Weights sum to Vol(S^3) = 2 pi^2. Used by the
// harmonic orthonormality tests.
struct S3Rule {
    std::vector<std::array<double, 4>> points;  // omega on the unit sphere
    std::vector<double> weights;
};
S3Rule s3_quadrature(int n_per_angle);

}  // namespace knotfield

#endif
