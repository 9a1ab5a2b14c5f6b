#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "knotfield/harmonics.hpp"
#include "knotfield/quadrature.hpp"

using namespace knotfield;

namespace {

std::array<double, 4> random_unit_omega(std::uint64_t k) {
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    };
    std::array<double, 4> w;
    double n2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        // Box-Muller-free: uniform then normalize suffices for test coverage
        w[i] = 2.0 * (double(mix(k * 4 + i) >> 11) * 0x1.0p-53) - 1.0;
        n2 += w[i] * w[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : w) v *= inv;
    return w;
}

std::complex<double> Y(int tj, int tm, int tn, const std::array<double, 4>& w) {
    const auto y = harmonic({tj, tm, tn}, w);
    return {y.re, y.im};
}

}  // namespace

TEST_CASE("su2_point at the poles and the spec orientation") {
    const auto id = su2_point({0.0, 0.0, 0.0, 1.0});
    CHECK(id.a.re == doctest::Approx(1.0));
    CHECK(id.a.im == doctest::Approx(0.0));
    CHECK(id.b.re == doctest::Approx(0.0));
    CHECK(id.b.im == doctest::Approx(0.0));

    // omega = e_3 maps to -i sigma_3 = diag(-i, i)
    const auto g3 = su2_point({0.0, 0.0, 1.0, 0.0});
    CHECK(g3.a.re == doctest::Approx(0.0));
    CHECK(g3.a.im == doctest::Approx(-1.0));
    CHECK(g3.d.im == doctest::Approx(1.0));
    CHECK(g3.b.re == doctest::Approx(0.0));

    CHECK_THROWS_AS(su2_point({0.5, 0.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("su2_point is unimodular") {
    for (int s = 0; s < 100; ++s) {
        const auto w = random_unit_omega(s + 10);
        const auto g = su2_point(w);
        const auto det = to_std(g.a) * to_std(g.d) - to_std(g.b) * to_std(g.c);
        CHECK(std::abs(det - 1.0) < 1e-12);
    }
}

TEST_CASE("scalar harmonic is the constant 1/(sqrt(2) pi)") {
    for (int s = 0; s < 20; ++s) {
        const auto y = Y(0, 0, 0, random_unit_omega(s + 50));
        CHECK(y.real() == doctest::Approx(1.0 / (std::sqrt(2.0) * std::numbers::pi)).epsilon(1e-14));
        CHECK(y.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("fundamental harmonic picks the SU(2) entry with the I3=+m labeling") {
    // Y_{1/2;m,n} = (1/pi) D_{-m,n}: the (m,n)=(-1/2,+1/2) member is g_11/pi.
    for (int s = 0; s < 20; ++s) {
        const auto w = random_unit_omega(s + 80);
        const auto g = su2_point(w);
        const auto y = Y(1, -1, 1, w);
        CHECK(y.real() == doctest::Approx(g.a.re / std::numbers::pi).epsilon(1e-13));
        CHECK(y.imag() == doctest::Approx(g.a.im / std::numbers::pi).epsilon(1e-13));
    }
}

TEST_CASE("invalid labels are rejected") {
    CHECK_THROWS_AS(harmonic({1, 1, 3}, {0, 0, 0, 1}), ValidationError);   // |n| > j
    CHECK_THROWS_AS(harmonic({2, 1, 0}, {0, 0, 0, 1}), ValidationError);   // parity
    CHECK_THROWS_AS(harmonic({-2, 0, 0}, {0, 0, 0, 1}), ValidationError);  // negative j
}

TEST_CASE("orthonormality spot check by S^3 quadrature") {
    const auto rule = s3_quadrature(32);
    const SpinLabel labels[] = {{0, 0, 0}, {1, 1, 1}, {1, -1, 1}, {2, 0, 0}, {2, 2, -2}, {3, 1, 3}};
    for (const auto& la : labels)
        for (const auto& lb : labels) {
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < rule.points.size(); ++i) {
                const auto ya = harmonic_unchecked<double>(la, rule.points[i]);
                const auto yb = harmonic_unchecked<double>(lb, rule.points[i]);
                acc += rule.weights[i] * std::conj(std::complex<double>(ya.re, ya.im)) *
                       std::complex<double>(yb.re, yb.im);
            }
            const bool same =
                la.two_j == lb.two_j && la.two_m == lb.two_m && la.two_n == lb.two_n;
            CHECK(std::abs(acc - (same ? 1.0 : 0.0)) < 1e-9);
        }
}

TEST_CASE("harmonics pick up (-1)^{2j} under the antipodal map") {
    for (int s = 0; s < 10; ++s) {
        const auto w = random_unit_omega(s + 200);
        const std::array<double, 4> mw{-w[0], -w[1], -w[2], -w[3]};
        for (const SpinLabel& l : {SpinLabel{1, 1, -1}, SpinLabel{2, 0, 2}, SpinLabel{3, -1, 1}}) {
            const auto y = Y(l.two_j, l.two_m, l.two_n, w);
            const auto ym = Y(l.two_j, l.two_m, l.two_n, mw);
            const double sign = (l.two_j % 2 == 0) ? 1.0 : -1.0;
            CHECK(std::abs(ym - sign * y) < 1e-12);
        }
    }
}

TEST_CASE("finite-difference Laplacian reproduces -4j(j+1)") {
    constexpr double h = 0.02;
    for (const SpinLabel& lab : {SpinLabel{1, 1, 1}, SpinLabel{2, 0, 2}, SpinLabel{3, -1, -1}}) {
        const double eig = -double(lab.two_j) * (lab.two_j + 2);
        int tested = 0;
        for (int s = 0; s < 20 && tested < 6; ++s) {
            const auto w = random_unit_omega(s + 400);
            auto G = [&](std::array<double, 4> p) {
                double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
                for (auto& v : p) v /= r;
                const auto y = harmonic_unchecked<double>(lab, p);
                return std::complex<double>(y.re, y.im);
            };
            const auto y0 = G(w);
            if (std::abs(y0) < 0.05) continue;
            std::complex<double> lap = 0.0;
            for (int mu = 0; mu < 4; ++mu) {
                auto at = [&](double sh) {
                    auto p = w;
                    p[mu] += sh * h;
                    return G(p);
                };
                lap += (-at(2) + 16.0 * at(1) - 30.0 * y0 + 16.0 * at(-1) - at(-2)) / (12 * h * h);
            }
            CHECK(std::abs(lap - eig * y0) / std::abs(eig * y0) < 1e-4);
            ++tested;
        }
        CHECK(tested > 0);
    }
}
