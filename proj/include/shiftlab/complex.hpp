#ifndef SHIFTLAB_COMPLEX_HPP
#define SHIFTLAB_COMPLEX_HPP

#include <ostream>

#include "precision.hpp"

namespace shiftlab {

// Minimal complex type over the arbitrary-precision real. std::complex is not
// specified for user-defined floating types, so we carry our own.
struct Cplx {
    Real re{0};
    Real im{0};

    Cplx() = default;
    Cplx(Real r) : re(std::move(r)) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cplx(int r) : re(r) {}
    Cplx(long r) : re(r) {}
    Cplx(double r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
};

inline Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }

inline Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
inline Cplx operator*(const Cplx& a, const Real& s) { return s * a; }

inline Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }

inline Cplx operator/(const Cplx& a, const Cplx& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Cplx& operator+=(Cplx& a, const Cplx& b) { a = a + b; return a; }
inline Cplx& operator-=(Cplx& a, const Cplx& b) { a = a - b; return a; }
inline Cplx& operator*=(Cplx& a, const Cplx& b) { a = a * b; return a; }

inline bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }

inline Cplx conj(const Cplx& a) { return {a.re, -a.im}; }

inline Real norm2(const Cplx& a) { return a.re * a.re + a.im * a.im; }

inline Real abs(const Cplx& a) {
    using std::sqrt;
    return sqrt(norm2(a));
}

inline Cplx cexp(const Cplx& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    const Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// e^{2*pi*i * num/den}: rational rotation on the unit circle.
inline Cplx unit_root(long num, long den) {
    using std::cos;
    using std::sin;
    const Real t = 2 * real_pi() * Real(num) / Real(den);
    return {cos(t), sin(t)};
}

// Integer power by repeated squaring.
inline Cplx cpow(Cplx base, unsigned long e) {
    Cplx acc{Real(1)};
    while (e) {
        if (e & 1UL) acc *= base;
        base *= base;
        e >>= 1UL;
    }
    return acc;
}

inline std::ostream& operator<<(std::ostream& os, const Cplx& z) {
    return os << "(" << z.re << ", " << z.im << ")";
}

} // namespace shiftlab

#endif
