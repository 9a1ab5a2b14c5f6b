#include <doctest.h>

#include <cmath>
#include <numbers>

#include "knotfield/geometry.hpp"

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

}  // namespace

TEST_CASE("sigma at reference events") {
    CHECK(sigma({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sigma({0.0, 0.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sigma({1.0, 1.0, 0.0, 0.0}) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("cylinder map at reference events") {
    const auto c = to_cylinder({1.0, 0.0, 0.0, 0.0});
    CHECK(c.tau == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(c.omega[0] == doctest::Approx(0.0));
    CHECK(c.omega[1] == doctest::Approx(0.0));
    CHECK(c.omega[2] == doctest::Approx(0.0));
    CHECK(c.omega[3] == doctest::Approx(-1.0).epsilon(1e-14));

    // t -> 0+ limit
    const auto c0 = to_cylinder({1e-12, 0.0, 0.0, 0.0});
    CHECK(c0.tau > 0.0);
    CHECK(c0.tau < 1e-11);
    CHECK(c0.omega[3] == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("omega stays on the unit sphere") {
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const MinkowskiEvent ev{4.0 * u01(3, 4 * i) - 2.0, 4.0 * u01(3, 4 * i + 1) - 2.0,
                                4.0 * u01(3, 4 * i + 2) - 2.0, 4.0 * u01(3, 4 * i + 3) - 2.0};
        const auto c = to_cylinder(ev);
        double n2 = 0.0;
        for (double w : c.omega) n2 += w * w;
        worst = std::max(worst, std::abs(n2 - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("tau branch: sign follows t and is continuous across t=0") {
    for (double r : {0.0, 0.7, 2.0}) {
        CHECK(to_cylinder({0.5, r, 0.0, 0.0}).tau > 0.0);
        CHECK(to_cylinder({-0.5, r, 0.0, 0.0}).tau < 0.0);
        const double tp = to_cylinder({1e-9, r, 0.0, 0.0}).tau;
        const double tm = to_cylinder({-1e-9, r, 0.0, 0.0}).tau;
        CHECK(std::abs(tp - tm) < 1e-8);
    }
    // dtau/dt > 0 everywhere: tau increases monotonically through the gluing
    const auto cof = coframe({0.9, 1.2, -0.4, 0.3});
    CHECK(cof.dtau[0] > 0.0);
}

TEST_CASE("coframe at the reference event") {
    const auto c = coframe({1.0, 0.0, 0.0, 0.0});
    CHECK(c.dtau[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 1; k < 4; ++k) CHECK(c.dtau[k] == doctest::Approx(0.0));
    for (int a = 0; a < 3; ++a) {
        CHECK(c.e[a][0] == doctest::Approx(0.0));
        for (int k = 0; k < 3; ++k)
            CHECK(c.e[a][1 + k] == doctest::Approx(a == k ? -1.0 : 0.0).epsilon(1e-14));
    }
}

TEST_CASE("coframe matches the finite-difference pullback oracle") {
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        const MinkowskiEvent ev{4.0 * u01(17, 4 * s) - 2.0, 4.0 * u01(17, 4 * s + 1) - 2.0,
                                4.0 * u01(17, 4 * s + 2) - 2.0, 4.0 * u01(17, 4 * s + 3) - 2.0};
        const auto cf = coframe(ev);
        const auto w = to_cylinder(ev).omega;
        double scale = 0.0, err = 0.0;
        for (int mu = 0; mu < 4; ++mu) {
            MinkowskiEvent ep = ev, em = ev;
            (mu == 0 ? ep.t : mu == 1 ? ep.x : mu == 2 ? ep.y : ep.z) += h;
            (mu == 0 ? em.t : mu == 1 ? em.x : mu == 2 ? em.y : em.z) -= h;
            const auto cp = to_cylinder(ep), cm = to_cylinder(em);
            err = std::max(err, std::abs(cf.dtau[mu] - (cp.tau - cm.tau) / (2 * h)));
            scale = std::max(scale, std::abs(cf.dtau[mu]));
            double dw[4];
            for (int C = 0; C < 4; ++C) dw[C] = (cp.omega[C] - cm.omega[C]) / (2 * h);
            for (int a = 0; a < 3; ++a) {
                double e_fd = 0.0;
                for (int b = 0; b < 3; ++b)
                    for (int cc = 0; cc < 3; ++cc) {
                        if (b == cc || b == a || cc == a) continue;
                        e_fd -= ((cc == (a + 2) % 3) ? 1.0 : -1.0) * w[b] * dw[cc];
                    }
                e_fd -= w[a] * dw[3] - w[3] * dw[a];
                err = std::max(err, std::abs(cf.e[a][mu] - e_fd));
                scale = std::max(scale, std::abs(cf.e[a][mu]));
            }
        }
        worst = std::max(worst, err / scale);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("pulled-back round metric is conformal to eta with factor sigma^2") {
    double worst = 0.0;
    for (int s = 0; s < 500; ++s) {
        const MinkowskiEvent ev{4.0 * u01(29, 4 * s) - 2.0, 4.0 * u01(29, 4 * s + 1) - 2.0,
                                4.0 * u01(29, 4 * s + 2) - 2.0, 4.0 * u01(29, 4 * s + 3) - 2.0};
        const auto c = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);
        const double s2 = c.sigma * c.sigma;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double g = -c.dtau[mu] * c.dtau[nu];
                for (int a = 0; a < 3; ++a) g += c.frame[a][mu] * c.frame[a][nu];
                const double eta = (mu == nu) ? (mu == 0 ? -1.0 : 1.0) : 0.0;
                worst = std::max(worst, std::abs(g - s2 * eta));
            }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("dual-number chain agrees with the double chain on values") {
    const MinkowskiEvent ev{0.7, 0.3, -0.2, 0.9};
    const auto cd = cylinder_chain<double>(ev.t, ev.x, ev.y, ev.z);
    const auto ca = cylinder_chain<Dual4>(Dual4::seed(ev.t, 0), Dual4::seed(ev.x, 1),
                                          Dual4::seed(ev.y, 2), Dual4::seed(ev.z, 3));
    CHECK(ca.tau.v == doctest::Approx(cd.tau).epsilon(1e-15));
    for (int a = 0; a < 3; ++a)
        for (int mu = 0; mu < 4; ++mu)
            CHECK(ca.frame[a][mu].v == doctest::Approx(cd.frame[a][mu]).epsilon(1e-15));
    // gradient slots match finite differences of tau
    constexpr double h = 1e-6;
    for (int mu = 0; mu < 4; ++mu) {
        MinkowskiEvent ep = ev, em = ev;
        (mu == 0 ? ep.t : mu == 1 ? ep.x : mu == 2 ? ep.y : ep.z) += h;
        (mu == 0 ? em.t : mu == 1 ? em.x : mu == 2 ? em.y : em.z) -= h;
        const double fd = (to_cylinder(ep).tau - to_cylinder(em).tau) / (2 * h);
        CHECK(ca.tau.g[mu] == doctest::Approx(fd).epsilon(1e-7));
    }
}
