#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "knotfield/fields.hpp"
#include "knotfield/presets.hpp"

using namespace knotfield;

namespace {

double u01(std::uint64_t seed, std::uint64_t k) {
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    };
    return double(mix(seed ^ mix(k)) >> 11) * 0x1.0p-53;
}

MinkowskiEvent random_event(std::uint64_t k, double tmin = 0.2, double tmax = 1.5) {
    return {tmin + (tmax - tmin) * u01(777, 4 * k), 2.4 * u01(777, 4 * k + 1) - 1.2,
            2.4 * u01(777, 4 * k + 2) - 1.2, 2.4 * u01(777, 4 * k + 3) - 1.2};
}

constexpr double kY000 = 0.225079079039276;  // 1/(sqrt(2) pi)

}  // namespace

TEST_CASE("x_coefficients at the three reference labels") {
    const auto cp = to_cylinder({0.8, 0.3, -0.1, 0.5});
    const double tau = cp.tau;
    const auto& w = cp.omega;

    // (0;0,1): only X_- survives, equal to -e^{2 i tau} Y_{0;0,0}
    {
        const auto x = x_coefficients({0, 0, 2, FreqSign::Plus, FieldPart::Real}, tau, w);
        CHECK(std::abs(x.plus) == doctest::Approx(0.0));
        CHECK(std::abs(x.three) == doctest::Approx(0.0));
        const auto expect = -std::exp(std::complex<double>(0.0, 2.0 * tau)) * kY000;
        CHECK(std::abs(x.minus - expect) < 1e-14);
    }
    // (0;0,0): only X_3, sqrt((j+1)^2 - n^2) = 1
    {
        const auto x = x_coefficients({0, 0, 0, FreqSign::Plus, FieldPart::Real}, tau, w);
        CHECK(std::abs(x.plus) == doctest::Approx(0.0));
        CHECK(std::abs(x.minus) == doctest::Approx(0.0));
        const auto expect = std::exp(std::complex<double>(0.0, 2.0 * tau)) * kY000;
        CHECK(std::abs(x.three - expect) < 1e-14);
    }
    // (1;0,2): only X_- with weight -sqrt(6), phase e^{4 i tau}, against Y_{1;0,1}
    {
        const auto x = x_coefficients({2, 0, 4, FreqSign::Plus, FieldPart::Real}, tau, w);
        CHECK(std::abs(x.plus) == doctest::Approx(0.0));
        CHECK(std::abs(x.three) == doctest::Approx(0.0));
        const auto y = harmonic({2, 0, 2}, w);
        const auto expect = -std::sqrt(6.0) * std::exp(std::complex<double>(0.0, 4.0 * tau)) *
                            std::complex<double>(y.re, y.im);
        CHECK(std::abs(x.minus - expect) < 1e-13);
    }
}

TEST_CASE("frequency sign flips the phase") {
    const auto cp = to_cylinder({0.6, 0.1, 0.2, -0.4});
    const auto xp = x_coefficients({0, 0, 0, FreqSign::Plus, FieldPart::Real}, cp.tau, cp.omega);
    const auto xm = x_coefficients({0, 0, 0, FreqSign::Minus, FieldPart::Real}, cp.tau, cp.omega);
    CHECK(std::abs(xp.three - std::conj(xm.three)) < 1e-14);  // Y_000 is real
}

TEST_CASE("gauge potential: reference value and temporal gauge") {
    const auto cfg = CompositeConfiguration::single({0, 0, 0, FreqSign::Plus, FieldPart::Real});
    // at (t=1, r=0): tau = pi/2, e^{2 i tau} = -1, e^3 = -dz
    const auto a = gauge_potential(cfg, {1.0, 0.0, 0.0, 0.0});
    CHECK(std::abs(a[0]) < 1e-14);
    CHECK(std::abs(a[1]) < 1e-14);
    CHECK(std::abs(a[2]) < 1e-14);
    CHECK(std::abs(a[3] - kY000) < 1e-12);

    // the cylinder-frame dtau component vanishes: eta^{mu nu} dtau_mu A_nu = 0
    for (int s = 0; s < 20; ++s) {
        const auto ev = random_event(s);
        const auto av = gauge_potential(cfg, ev);
        const auto cof = coframe(ev);
        std::complex<double> proj = -cof.dtau[0] * av[0];
        for (int k = 1; k < 4; ++k) proj += cof.dtau[k] * av[k];
        CHECK(std::abs(proj) < 1e-12);
    }
}

TEST_CASE("zero amplitude gives a zero field") {
    auto cfg = CompositeConfiguration::single({1, 1, 1, FreqSign::Plus, FieldPart::Real}, 0.0);
    const auto f = field_strength(cfg, {0.7, 0.2, 0.1, -0.3});
    CHECK(norm(f.E) == 0.0);
    CHECK(norm(f.B) == 0.0);
    CHECK(energy_density(cfg, {0.7, 0.2, 0.1, -0.3}) == 0.0);
}

TEST_CASE("exact fields match the finite-difference oracle on the potential") {
    constexpr double h = 1e-4;
    const ConfigurationLabel labels[] = {
        {0, 0, 2, FreqSign::Plus, FieldPart::Imag},
        {1, -1, -3, FreqSign::Plus, FieldPart::Real},
        {2, 0, 0, FreqSign::Minus, FieldPart::Imag},
        {2, 2, 2, FreqSign::Plus, FieldPart::Real},
    };
    for (const auto& lab : labels) {
        const auto cfg = CompositeConfiguration::single(lab, 0.8);
        for (int s = 0; s < 8; ++s) {
            const auto ev = random_event(200 + s);
            const auto f = field_strength(cfg, ev);
            // dA[mu][nu] = d_mu A_nu by central differences of the real potential
            double dA[4][4];
            for (int mu = 0; mu < 4; ++mu) {
                MinkowskiEvent ep = ev, em = ev;
                (mu == 0 ? ep.t : mu == 1 ? ep.x : mu == 2 ? ep.y : ep.z) += h;
                (mu == 0 ? em.t : mu == 1 ? em.x : mu == 2 ? em.y : em.z) -= h;
                const auto ap = real_potential(cfg, ep), am = real_potential(cfg, em);
                for (int nu = 0; nu < 4; ++nu) dA[mu][nu] = (ap[nu] - am[nu]) / (2 * h);
            }
            const Vec3 e_fd{dA[1][0] - dA[0][1], dA[2][0] - dA[0][2], dA[3][0] - dA[0][3]};
            const Vec3 b_fd{dA[2][3] - dA[3][2], dA[3][1] - dA[1][3], dA[1][2] - dA[2][1]};
            const double scale = std::max({norm(f.E), norm(f.B), 1e-6});
            CHECK(norm(f.E - e_fd) / scale < 1e-5);
            CHECK(norm(f.B - b_fd) / scale < 1e-5);
        }
    }
}

TEST_CASE("field of a combination is the combination of fields") {
    const auto l1 = ConfigurationLabel{1, 1, 1, FreqSign::Plus, FieldPart::Real};
    const auto l2 = ConfigurationLabel{2, 0, -2, FreqSign::Minus, FieldPart::Imag};
    CompositeConfiguration mix;
    mix.terms = {{l1, 0.7}, {l2, -1.3}};
    for (int s = 0; s < 10; ++s) {
        const auto ev = random_event(300 + s);
        const auto f = field_strength(mix, ev);
        const auto f1 = field_strength(CompositeConfiguration::single(l1), ev);
        const auto f2 = field_strength(CompositeConfiguration::single(l2), ev);
        CHECK(norm(f.E - (0.7 * f1.E - 1.3 * f2.E)) < 1e-12);
        CHECK(norm(f.B - (0.7 * f1.B - 1.3 * f2.B)) < 1e-12);
    }
}

TEST_CASE("energy density scales quadratically with the amplitude") {
    const auto lab = ConfigurationLabel{1, -1, 1, FreqSign::Plus, FieldPart::Real};
    const auto ev = random_event(44);
    const double u1 = energy_density(CompositeConfiguration::single(lab, 1.0), ev);
    const double u3 = energy_density(CompositeConfiguration::single(lab, 3.0), ev);
    CHECK(u3 == doctest::Approx(9.0 * u1).epsilon(1e-12));
    CHECK(u1 >= 0.0);
}

TEST_CASE("fields on the z-axis are axial or transverse, never slanted") {
    for (const auto& lab :
         {ConfigurationLabel{0, 0, 2, FreqSign::Plus, FieldPart::Real},
          ConfigurationLabel{1, 1, 1, FreqSign::Plus, FieldPart::Imag},
          ConfigurationLabel{2, 0, 0, FreqSign::Plus, FieldPart::Real},
          ConfigurationLabel{2, -2, 2, FreqSign::Minus, FieldPart::Imag}}) {
        const auto cfg = CompositeConfiguration::single(lab);
        for (double z : {-1.1, 0.4, 0.9})
            for (double t : {0.0, 0.6}) {
                const auto f = field_strength(cfg, {t, 0.0, 0.0, z});
                for (const Vec3& F : {f.E, f.B}) {
                    const double n2 = norm2(F);
                    if (n2 < 1e-20) continue;
                    CHECK(std::abs(F.z) * std::hypot(F.x, F.y) < 1e-9 * n2);
                }
            }
    }
}

TEST_CASE("extreme configurations vanish on the z-axis") {
    for (const auto& lab : {ConfigurationLabel{2, 2, 4, FreqSign::Plus, FieldPart::Real},
                            ConfigurationLabel{2, -2, -4, FreqSign::Plus, FieldPart::Imag}}) {
        const auto cfg = CompositeConfiguration::single(lab);
        for (double z : {-1.5, 0.01, 0.8})
            for (double t : {0.0, 0.5, 1.0}) {
                const auto f = field_strength(cfg, {t, 0.0, 0.0, z});
                CHECK(norm(f.E) < 1e-10);
                CHECK(norm(f.B) < 1e-10);
            }
    }
}

TEST_CASE("label admissibility") {
    CHECK_THROWS_AS(CompositeConfiguration::single({0, 0, 6, FreqSign::Plus, FieldPart::Real})
                        .validate(),
                    ValidationError);  // n beyond j+1
    CHECK_THROWS_AS(CompositeConfiguration::single({2, 3, 0, FreqSign::Plus, FieldPart::Real})
                        .validate(),
                    ValidationError);  // |m| > j (and parity)
    CHECK_NOTHROW(CompositeConfiguration::single({0, 0, 2, FreqSign::Plus, FieldPart::Real})
                      .validate());  // n = j+1 allowed
    CompositeConfiguration empty;
    CHECK_THROWS_AS(empty.validate(), ValidationError);
}

TEST_CASE("find_rmax against the dense-grid oracle") {
    // (0;0,1)_I: the maximum sits at the origin; the dense scan agrees
    {
        const auto cfg = CompositeConfiguration::single({0, 0, 2, FreqSign::Plus, FieldPart::Imag});
        GridSpec dense;
        dense.lo = {-2.0, -2.0, -2.0};
        dense.hi = {2.0, 2.0, 2.0};
        dense.n = {201, 201, 201};
        const auto samples = field_on_grid(cfg, 0.0, dense);
        double bu = -1.0;
        Vec3 bx;
        for (const auto& s : samples)
            if (s.density > bu) {
                bu = s.density;
                bx = s.pos;
            }
        const auto r = find_rmax(cfg, 0.0);
        const double cell = 4.0 / 200.0;
        CHECK(std::abs(r.r_max - norm(bx)) < 1.5 * cell);
        CHECK(r.e_max >= bu - 1e-9);
    }
    // (1/2;-1/2,-3/2)_R: off-origin maximum, compare against a 101^3 scan
    {
        const auto cfg =
            CompositeConfiguration::single({1, -1, -3, FreqSign::Plus, FieldPart::Real});
        GridSpec dense;
        dense.lo = {-1.0, -1.0, -1.0};
        dense.hi = {1.0, 1.0, 1.0};
        dense.n = {101, 101, 101};
        const auto samples = field_on_grid(cfg, 0.0, dense);
        double bu = -1.0;
        Vec3 bx;
        for (const auto& s : samples)
            if (s.density > bu) {
                bu = s.density;
                bx = s.pos;
            }
        SearchParams sp;
        sp.lo = {-1.5, -1.5, -1.5};
        sp.hi = {1.5, 1.5, 1.5};
        const auto r = find_rmax(cfg, 0.0, sp);
        const double cell = 2.0 / 100.0;
        CHECK(r.r_max > 0.1);
        CHECK(std::abs(r.r_max - norm(bx)) < 1.5 * cell);
        CHECK(r.e_max >= bu - 1e-9);

        // amplitude rescaling moves E_max but not the location
        const auto r2 = find_rmax(
            CompositeConfiguration::single({1, -1, -3, FreqSign::Plus, FieldPart::Real}, 2.5), 0.0,
            sp);
        CHECK(r2.r_max == doctest::Approx(r.r_max).epsilon(1e-5));
        CHECK(r2.e_max == doctest::Approx(6.25 * r.e_max).epsilon(1e-9));
    }
}

TEST_CASE("find_rmax rejects a flat landscape") {
    const auto cfg = CompositeConfiguration::single({1, 1, 1, FreqSign::Plus, FieldPart::Real}, 0.0);
    SearchParams sp;
    sp.grid_n = 11;
    CHECK_THROWS_AS(find_rmax(cfg, 0.0, sp), NumericalError);
}

TEST_CASE("field_on_grid basics") {
    const auto cfg = CompositeConfiguration::single({1, 1, -1, FreqSign::Plus, FieldPart::Real});
    // single-point grid reproduces field_strength
    GridSpec one;
    one.lo = {0.3, -0.2, 0.5};
    one.hi = {0.3, -0.2, 0.5};
    one.n = {1, 1, 1};
    const auto s = field_on_grid(cfg, 0.4, one);
    REQUIRE(s.size() == 1);
    const auto f = field_strength(cfg, {0.4, 0.3, -0.2, 0.5});
    CHECK(norm(s[0].field.E - f.E) == 0.0);
    CHECK(norm(s[0].field.B - f.B) == 0.0);

    // empty grid
    GridSpec empty;
    empty.n = {0, 3, 3};
    CHECK(field_on_grid(cfg, 0.0, empty).empty());

    // serial and parallel paths agree bit for bit
    GridSpec g;
    g.n = {7, 7, 7};
    const auto a = field_on_grid(cfg, 0.2, g, ExecPolicy::Serial);
    const auto b = field_on_grid(cfg, 0.2, g, ExecPolicy::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].density == b[i].density);
        CHECK(norm(a[i].field.E - b[i].field.E) == 0.0);
    }
}

TEST_CASE("grid densities mirror under the parity that fixes the configuration") {
    // full spatial parity x -> -x: the j=0 basis densities are invariant
    const auto cfg = CompositeConfiguration::single({0, 0, 2, FreqSign::Plus, FieldPart::Real});
    for (int s = 0; s < 12; ++s) {
        const auto ev = random_event(900 + s, 0.0, 1.0);
        const double up = energy_density(cfg, ev);
        const double um = energy_density(cfg, {ev.t, -ev.x, -ev.y, -ev.z});
        CHECK(up == doctest::Approx(um).epsilon(1e-10));
    }
}
