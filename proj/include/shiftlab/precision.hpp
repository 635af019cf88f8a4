#ifndef SHIFTLAB_PRECISION_HPP
#define SHIFTLAB_PRECISION_HPP

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace shiftlab {

// Arbitrary-precision real. Expression templates are off so values can be
// stored inside aggregates (complex pairs, vectors) without surprises.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultDigits = 50;     // weights/recurrence default
inline constexpr unsigned kQuadratureDigits = 30;  // quadrature default
inline constexpr unsigned kMaxDigits = 2000;

// Environment override for the default working precision (decimal digits).
inline unsigned env_default_digits() {
    if (const char* s = std::getenv("SHIFTLAB_PRECISION")) {
        const long v = std::atol(s);
        if (v >= 10 && v <= static_cast<long>(kMaxDigits)) return static_cast<unsigned>(v);
    }
    return kDefaultDigits;
}

inline unsigned working_digits() { return Real::default_precision(); }

inline void set_working_digits(unsigned digits10) {
    if (digits10 < 5 || digits10 > kMaxDigits)
        throw PrecisionError("working precision out of range: " + std::to_string(digits10));
    Real::default_precision(digits10);
}

// Scoped precision change; new Real values created inside the scope carry the
// scope's precision, existing values keep theirs.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
        set_working_digits(digits10);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

// One decimal unit in the last place at the current working precision,
// as a relative quantity: eps = 10^(1 - digits10).
inline Real unit_roundoff() {
    return pow(Real(10), 1 - static_cast<int>(working_digits()));
}

// k units in the last place of x (scale floor 1 so tolerances behave near 0).
inline Real ulps_of(const Real& x, unsigned k = 1) {
    using std::abs;
    Real scale = abs(x);
    if (scale < 1) scale = 1;
    return Real(k) * unit_roundoff() * scale;
}

inline bool within_ulps(const Real& a, const Real& b, unsigned k) {
    using std::abs;
    return abs(a - b) <= ulps_of(a, k);
}

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

// Round a (possibly higher-precision) value to the current working precision.
inline Real to_working(Real x) {
    x.precision(working_digits());
    return x;
}

} // namespace shiftlab

#endif
