#ifndef SHIFTLAB_RATIONAL_HPP
#define SHIFTLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>

#include "errors.hpp"
#include "precision.hpp"

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

inline Real rat_to_real(const Rat& r) {
    return Real(r.numerator().str()) / Real(r.denominator().str());
}

// Parse "7", "-3/2", or a plain decimal like "1.25" into an exact rational.
inline Rat rat_from_string(const std::string& s) {
    const auto bad = [&] { return ConfigError("not a rational literal: '" + s + "'"); };
    if (s.empty()) throw bad();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw bad();
        }
    }
    const auto dot = s.find('.');
    try {
        if (dot == std::string::npos) return Rat(BigInt(s));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const size_t frac_len = s.size() - dot - 1;
        BigInt den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rat(BigInt(digits), den);
    } catch (const std::exception&) {
        throw bad();
    }
}

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

// A rational multiple of an optional factor pi: r or r*pi. Space parameters
// are kept in this form so derived quantities like 2*pi/nu stay exact when
// nu is a pi multiple.
struct PiRat {
    Rat r{0};
    bool pi = false;

    PiRat() = default;
    PiRat(Rat v, bool times_pi = false) : r(std::move(v)), pi(times_pi) {}
    PiRat(long v) : r(BigInt(v)) {}

    Real to_real() const {
        Real v = rat_to_real(r);
        return pi ? v * real_pi() : v;
    }
    bool is_rational() const { return !pi || r == Rat(0); }
    bool is_zero() const { return r == Rat(0); }
};

// Accepts "2pi", "pi", "3/2pi", "1.5", "-2", "0".
inline PiRat pirat_from_string(std::string s) {
    if (s.empty()) throw ConfigError("empty numeric literal");
    bool pi = false;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        pi = true;
        s.erase(s.size() - 2);
        if (s.empty() || s == "-") s += "1";
    }
    return PiRat(rat_from_string(s), pi);
}

inline std::string pirat_to_string(const PiRat& v) {
    if (!v.pi) return rat_to_string(v.r);
    if (v.r == Rat(1)) return "pi";
    return rat_to_string(v.r) + "pi";
}

// Quadratic surd q*sqrt(s) with q, s rational, s >= 0. Closed under
// multiplication and division; comparisons are exact via cross-squaring.
struct RootRat {
    Rat q{0};
    Rat s{1};

    RootRat() = default;
    RootRat(Rat q_, Rat s_ = Rat(1)) : q(std::move(q_)), s(std::move(s_)) {
        if (s < Rat(0)) throw PreconditionError("negative radicand in quadratic surd");
        if (s == Rat(0)) q = Rat(0), s = Rat(1);
        if (q == Rat(0)) s = Rat(1);
        if (s != Rat(1)) {
            // fold perfect-square radicand parts into the rational factor
            const BigInt n = s.numerator(), d = s.denominator();
            const BigInt rn = boost::multiprecision::sqrt(n);
            const BigInt rd = boost::multiprecision::sqrt(d);
            const bool nsq = rn * rn == n, dsq = rd * rd == d;
            if (nsq && dsq) {
                q *= Rat(rn, rd);
                s = Rat(1);
            } else if (nsq) {
                q *= Rat(rn, d);
                s = Rat(d);
            } else if (dsq && rd != 1) {
                q *= Rat(BigInt(1), rd);
                s = Rat(n);
            }
        }
    }
    static RootRat zero() { return RootRat(); }
    static RootRat one() { return RootRat(Rat(1)); }

    bool is_zero() const { return q == Rat(0); }
    int sign() const { return q > Rat(0) ? 1 : (q < Rat(0) ? -1 : 0); }

    Real to_real() const {
        using std::sqrt;
        return rat_to_real(q) * sqrt(rat_to_real(s));
    }

    std::string describe() const {
        if (s == Rat(1)) return rat_to_string(q);
        return rat_to_string(q) + "*sqrt(" + rat_to_string(s) + ")";
    }
};

inline RootRat operator*(const RootRat& a, const RootRat& b) {
    if (a.s.denominator() == 1 && b.s.denominator() == 1) {
        // sqrt(m) sqrt(n) = g sqrt((m/g)(n/g)) with g = gcd(m, n): keeps the
        // radicand small and telescoping products in a matching normal form
        const BigInt g = boost::multiprecision::gcd(a.s.numerator(), b.s.numerator());
        if (g > 1)
            return RootRat(a.q * b.q * Rat(g),
                           Rat((a.s.numerator() / g) * (b.s.numerator() / g)));
    }
    return RootRat(a.q * b.q, a.s * b.s);
}

inline RootRat operator/(const RootRat& a, const RootRat& b) {
    if (b.is_zero()) throw PreconditionError("division by zero surd");
    // 1/(q sqrt(s)) = (1/(q s)) sqrt(s)
    return a * RootRat(Rat(1) / (b.q * b.s), b.s);
}

inline RootRat inverse(const RootRat& a) { return RootRat::one() / a; }

// Exact three-way comparison of a and b as real numbers: -1, 0, +1.
inline int compare(const RootRat& a, const RootRat& b) {
    const int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    const Rat qa = a.q * a.q * a.s;  // (a)^2
    const Rat qb = b.q * b.q * b.s;
    if (qa == qb) return 0;
    const bool amag = qa > qb;  // |a| > |b|
    if (sa > 0) return amag ? 1 : -1;
    return amag ? -1 : 1;
}

inline bool operator==(const RootRat& a, const RootRat& b) { return compare(a, b) == 0; }
inline bool operator<(const RootRat& a, const RootRat& b) { return compare(a, b) < 0; }
inline bool operator<=(const RootRat& a, const RootRat& b) { return compare(a, b) <= 0; }

// Sum is exact only when both terms share the same radicand (or one is zero).
inline RootRat add_same_radicand(const RootRat& a, const RootRat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.s != b.s)
        throw PreconditionError("surd addition requires matching radicands");
    return RootRat(a.q + b.q, a.s);
}

inline BigInt factorial_big(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

// Rising factorial x*(x+1)*...*(x+n-1) over rationals.
inline Rat pochhammer_rat(const Rat& x, unsigned n) {
    Rat acc(1);
    for (unsigned k = 0; k < n; ++k) acc *= (x + Rat(BigInt(k)));
    return acc;
}

} // namespace shiftlab

#endif
