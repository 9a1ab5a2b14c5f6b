#ifndef KNOTFIELD_FIELDS_HPP
#define KNOTFIELD_FIELDS_HPP

#include <array>
#include <string>
#include <vector>

#include "knotfield/exec.hpp"
#include "knotfield/geometry.hpp"
#include "knotfield/harmonics.hpp"
#include "knotfield/vec.hpp"

namespace knotfield {

// Basis gauge potentials on the cylinder, pulled back to Minkowski space and
// differentiated exactly (dual numbers) to produce real E and B fields.
//
// One basis solution per label (j; m, n) with n in [-(j+1), j+1]:
//   X_+ =  sqrt((j-n)(j-n+1)/2) e^{s 2(j+1) i tau} Y_{j;m,n+1}
//   X_3 =  sqrt((j+1)^2 - n^2)  e^{s 2(j+1) i tau} Y_{j;m,n}
//   X_- = -sqrt((j+n)(j+n+1)/2) e^{s 2(j+1) i tau} Y_{j;m,n-1}
// with Y terms vanishing for |n'| > j, s = freq sign. The potential one-form
// is A = X_1 e^1 + X_2 e^2 + X_3 e^3 with the unitary recombination
//   X_1 = (X_+ + X_-)/sqrt(2),  X_2 = (X_+ - X_-)/(sqrt(2) i),
// the only recombination for which the pulled-back field satisfies the
// vacuum Maxwell equations (checked to the FD noise floor by the residual
// suite). Physical fields: E_i = -F_{0i}, B_i = (1/2) eps_{ijk} F_{jk}.

enum class FreqSign : int { Plus = +1, Minus = -1 };
enum class FieldPart { Real, Imag };

struct ConfigurationLabel {
    int two_j = 0, two_m = 0, two_n = 0;
    FreqSign freq = FreqSign::Plus;
    FieldPart part = FieldPart::Real;

    bool admissible() const {
        if (two_j < 0) return false;
        if (std::abs(two_m) > two_j) return false;
        if (std::abs(two_n) > two_j + 2) return false;
        if ((two_m & 1) != (two_j & 1) || (two_n & 1) != (two_j & 1)) return false;
        return true;
    }
    void validate() const;
    std::string str() const;
};

struct CompositeConfiguration {
    struct Term {
        ConfigurationLabel label;
        double amplitude = 1.0;
    };
    std::vector<Term> terms;

    static CompositeConfiguration single(const ConfigurationLabel& l, double amp = 1.0) {
        CompositeConfiguration c;
        c.terms.push_back({l, amp});
        return c;
    }
    void validate() const;
};

struct EMFieldSample {
    Vec3 E, B;
};

inline double energy_density(const EMFieldSample& f) {
    return 0.5 * (norm2(f.E) + norm2(f.B));
}

// ---- templated evaluation chain ----

template <class S>
struct XTriple {
    Cplx<S> plus, three, minus;
};

// The three cylinder components of one basis solution at (tau, omega).
template <class S>
XTriple<S> x_triple(int two_j, int two_m, int two_n, FreqSign freq, const S& tau,
                    const std::array<S, 4>& omega) {
    const double jmn = 0.5 * (two_j - two_n);   // j - n, integer-valued
    const double jpn = 0.5 * (two_j + two_n);   // j + n
    const double cplus = std::sqrt(std::max(0.0, jmn * (jmn + 1.0) * 0.5));
    const double cminus = std::sqrt(std::max(0.0, jpn * (jpn + 1.0) * 0.5));
    const double jp1 = 0.5 * two_j + 1.0;
    const double cthree = std::sqrt(std::max(0.0, jp1 * jp1 - 0.25 * two_n * two_n));

    const S angle = double(int(freq) * (two_j + 2)) * tau;
    const Cplx<S> phase(cos(angle), sin(angle));

    auto y = [&](int tn) -> Cplx<S> {
        if (std::abs(tn) > two_j) return Cplx<S>(S(0.0), S(0.0));
        return harmonic_unchecked<S>({two_j, two_m, tn}, omega);
    };

    XTriple<S> out;
    out.plus = cplus * (phase * y(two_n + 2));
    out.three = cthree * (phase * y(two_n));
    out.minus = -1.0 * (cminus * (phase * y(two_n - 2)));
    return out;
}

// Complex pulled-back potential A_mu of one label at a prepared chain point.
template <class S>
std::array<Cplx<S>, 4> label_potential(const ConfigurationLabel& l, const CylinderChain<S>& c) {
    const auto xt = x_triple<S>(l.two_j, l.two_m, l.two_n, l.freq, c.tau, c.omega);
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Cplx<S> x1 = inv_sqrt2 * (xt.plus + xt.minus);
    const Cplx<S> x2 = div_i(inv_sqrt2 * (xt.plus - xt.minus));
    std::array<Cplx<S>, 4> a;
    for (int mu = 0; mu < 4; ++mu)
        a[mu] = x1 * Cplx<S>(c.frame[0][mu]) + x2 * Cplx<S>(c.frame[1][mu]) +
                xt.three * Cplx<S>(c.frame[2][mu]);
    return a;
}

// ---- double-precision public surface ----

struct XCoefficients {
    std::complex<double> plus, three, minus;
};

XCoefficients x_coefficients(const ConfigurationLabel& label, double tau,
                             const std::array<double, 4>& omega);

// Sum of per-term complex potentials (amplitudes applied, R/I split not).
std::array<std::complex<double>, 4> gauge_potential(const CompositeConfiguration& config,
                                                    const MinkowskiEvent& ev);

// Real potential of the physical composite field: amplitudes and R/I parts
// applied per term. The exact fields are the exterior derivative of this.
std::array<double, 4> real_potential(const CompositeConfiguration& config,
                                     const MinkowskiEvent& ev);

// Exact E and B via the dual-number chain.
EMFieldSample field_strength(const CompositeConfiguration& config, const MinkowskiEvent& ev);

double energy_density(const CompositeConfiguration& config, const MinkowskiEvent& ev);

// ---- energy-maximum search ----

struct SearchParams {
    Vec3 lo{-3.0, -3.0, -3.0};
    Vec3 hi{3.0, 3.0, 3.0};
    int grid_n = 61;
    double position_tol = 1e-6;
    double flat_threshold = 1e-15;
    ExecPolicy policy = ExecPolicy::Parallel;
};

struct RmaxResult {
    double r_max = 0.0;
    double e_max = 0.0;
    Vec3 x_max;
};

// Global maximum of the energy density over the box at fixed t: deterministic
// coarse scan (first best in scan order wins ties) + Nelder-Mead polish.
RmaxResult find_rmax(const CompositeConfiguration& config, double t,
                     const SearchParams& search = {});

// ---- grid sampling ----

struct GridSpec {
    std::array<double, 3> lo{-2.0, -2.0, -2.0};
    std::array<double, 3> hi{2.0, 2.0, 2.0};
    std::array<int, 3> n{41, 41, 41};

    long total() const { return long(n[0]) * n[1] * n[2]; }
    Vec3 point(long linear) const {
        const long iz = linear % n[2];
        const long iy = (linear / n[2]) % n[1];
        const long ix = linear / (long(n[1]) * n[2]);
        auto coord = [&](int axis, long i) {
            return n[axis] == 1 ? lo[axis]
                                : lo[axis] + (hi[axis] - lo[axis]) * double(i) / (n[axis] - 1);
        };
        return {coord(0, ix), coord(1, iy), coord(2, iz)};
    }
    void validate() const;
};

struct GridSample {
    Vec3 pos;
    EMFieldSample field;
    double density = 0.0;
};

// Row-major [x][y][z] samples at fixed t.
std::vector<GridSample> field_on_grid(const CompositeConfiguration& config, double t,
                                      const GridSpec& grid,
                                      ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace knotfield

#endif
