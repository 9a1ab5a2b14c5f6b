#ifndef KNOTFIELD_CPLX_HPP
#define KNOTFIELD_CPLX_HPP

#include <complex>

#include "knotfield/dual.hpp"

namespace knotfield {

// Complex number over a generic real scalar (double or Dual4). std::complex
// is only specified for the builtin floating types, so the dual-number field
// chain carries its own minimal complex type.
template <class T>
struct Cplx {
    T re{}, im{};

    Cplx() = default;
    Cplx(const T& r) : re(r) {}
    Cplx(const T& r, const T& i) : re(r), im(i) {}
};

template <class T>
Cplx<T> operator+(const Cplx<T>& a, const Cplx<T>& b) { return {a.re + b.re, a.im + b.im}; }
template <class T>
Cplx<T> operator-(const Cplx<T>& a, const Cplx<T>& b) { return {a.re - b.re, a.im - b.im}; }
template <class T>
Cplx<T> operator-(const Cplx<T>& a) { return {-a.re, -a.im}; }
template <class T>
Cplx<T> operator*(const Cplx<T>& a, const Cplx<T>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
Cplx<T> operator*(double s, const Cplx<T>& a) { return {s * a.re, s * a.im}; }
template <class T>
Cplx<T> operator*(const Cplx<T>& a, double s) { return s * a; }
template <class T>
Cplx<T> operator*(const T& s, const Cplx<T>& a) { return {s * a.re, s * a.im}; }

template <class T>
Cplx<T> conj(const Cplx<T>& a) { return {a.re, -a.im}; }
// Multiplication by i and by -i (division by i).
template <class T>
Cplx<T> times_i(const Cplx<T>& a) { return {-a.im, a.re}; }
template <class T>
Cplx<T> div_i(const Cplx<T>& a) { return {a.im, -a.re}; }

template <class T>
Cplx<T> pow_int(const Cplx<T>& a, int n) {
    Cplx<T> r(T(1.0), T(0.0));
    for (int k = 0; k < n; ++k) r = r * a;
    return r;
}

inline std::complex<double> to_std(const Cplx<double>& a) { return {a.re, a.im}; }

}  // namespace knotfield

#endif
