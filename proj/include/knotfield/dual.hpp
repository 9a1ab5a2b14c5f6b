#ifndef KNOTFIELD_DUAL_HPP
#define KNOTFIELD_DUAL_HPP

#include <array>
#include <cmath>

namespace knotfield {

// Forward-mode dual number carrying the value of an expression together with
// its four partial derivatives with respect to (t, x, y, z). Seeding the
// coordinates and evaluating the potential through Dual4 arithmetic yields
// machine-exact field derivatives; no finite differencing on the production
// path.
struct Dual4 {
    double v = 0.0;
    std::array<double, 4> g{0.0, 0.0, 0.0, 0.0};

    Dual4() = default;
    Dual4(double value) : v(value) {}

    static Dual4 seed(double value, int slot) {
        Dual4 d(value);
        d.g[slot] = 1.0;
        return d;
    }
};

inline Dual4 operator+(const Dual4& a, const Dual4& b) {
    Dual4 r(a.v + b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
    return r;
}
inline Dual4 operator-(const Dual4& a, const Dual4& b) {
    Dual4 r(a.v - b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
    return r;
}
inline Dual4 operator-(const Dual4& a) {
    Dual4 r(-a.v);
    for (int i = 0; i < 4; ++i) r.g[i] = -a.g[i];
    return r;
}
inline Dual4 operator*(const Dual4& a, const Dual4& b) {
    Dual4 r(a.v * b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    return r;
}
inline Dual4 operator*(double s, const Dual4& a) {
    Dual4 r(s * a.v);
    for (int i = 0; i < 4; ++i) r.g[i] = s * a.g[i];
    return r;
}
inline Dual4 operator*(const Dual4& a, double s) { return s * a; }
inline Dual4 operator/(const Dual4& a, const Dual4& b) {
    double inv = 1.0 / b.v;
    Dual4 r(a.v * inv);
    for (int i = 0; i < 4; ++i) r.g[i] = (a.g[i] - r.v * b.g[i]) * inv;
    return r;
}
inline Dual4 operator/(const Dual4& a, double s) { return a * (1.0 / s); }
inline Dual4 operator+(const Dual4& a, double s) { Dual4 r = a; r.v += s; return r; }
inline Dual4 operator+(double s, const Dual4& a) { return a + s; }
inline Dual4 operator-(const Dual4& a, double s) { return a + (-s); }
inline Dual4 operator-(double s, const Dual4& a) { return -(a - s); }

inline Dual4 sqrt(const Dual4& a) {
    Dual4 r(std::sqrt(a.v));
    double inv = 0.5 / r.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * inv;
    return r;
}
inline Dual4 sin(const Dual4& a) {
    Dual4 r(std::sin(a.v));
    double c = std::cos(a.v);
    for (int i = 0; i < 4; ++i) r.g[i] = c * a.g[i];
    return r;
}
inline Dual4 cos(const Dual4& a) {
    Dual4 r(std::cos(a.v));
    double s = -std::sin(a.v);
    for (int i = 0; i < 4; ++i) r.g[i] = s * a.g[i];
    return r;
}
// Two-argument arctangent; smooth wherever (x, y) != (0, 0).
inline Dual4 atan2(const Dual4& y, const Dual4& x) {
    Dual4 r(std::atan2(y.v, x.v));
    double inv = 1.0 / (x.v * x.v + y.v * y.v);
    for (int i = 0; i < 4; ++i) r.g[i] = (x.v * y.g[i] - y.v * x.g[i]) * inv;
    return r;
}

// Passthroughs so the field chain can be instantiated with plain doubles.
inline double value_of(double x) { return x; }
inline double value_of(const Dual4& x) { return x.v; }

}  // namespace knotfield

#endif
