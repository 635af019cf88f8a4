#ifndef SHIFTLAB_WEIGHTS_HPP
#define SHIFTLAB_WEIGHTS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "rational.hpp"
#include "space_spec.hpp"

namespace shiftlab {

// ---------------------------------------------------------------------------
// Gamma-ratio m_n = Gamma(a*(n+1)) / Gamma(a*n) with a = 2/beta, m_0 = 0.
// Computed through log-Gamma at escalating precision until two evaluations
// agree to the working precision; the observed disagreement is the error
// bound.
// ---------------------------------------------------------------------------

struct GammaRatioResult {
    Real value;
    Real rel_error_bound;
};

namespace detail {

inline Real gamma_ratio_at(unsigned digits, long n, const Real& a) {
    PrecisionGuard guard(digits);
    using std::exp;
    using std::lgamma;
    const Real an(Real(n) * Real(a));
    const Real an1(Real(n + 1) * Real(a));
    return exp(lgamma(an1) - lgamma(an));
}

} // namespace detail

inline GammaRatioResult gamma_ratio_checked(long n, const Real& beta) {
    if (n < 0) throw PreconditionError("gamma ratio needs n >= 0");
    if (beta <= 0) throw PreconditionError("gamma ratio needs beta > 0");
    if (n == 0) return {Real(0), Real(0)};  // m_0 = 0 by convention
    const unsigned target = working_digits();
    // Guard digits cover the magnitude of log-Gamma near a*n.
    const unsigned guard =
        16 + 2 * static_cast<unsigned>(std::log10(static_cast<double>(n) + 2.0));
    const Real a = Real(2) / beta;
    Real v1 = detail::gamma_ratio_at(target + guard, n, a);
    Real v2 = detail::gamma_ratio_at(target + guard + 20, n, a);
    using std::abs;
    Real rel = abs(v1 - v2) / abs(v2);
    if (rel > pow(Real(10), -static_cast<int>(target))) {
        v1 = detail::gamma_ratio_at(target + guard + 60, n, a);
        v2 = detail::gamma_ratio_at(target + guard + 80, n, a);
        rel = abs(v1 - v2) / abs(v2);
        if (rel > pow(Real(10), -static_cast<int>(target)))
            throw PrecisionError("gamma ratio did not stabilize at n=" + std::to_string(n));
    }
    return {to_working(v2), to_working(rel + unit_roundoff())};
}

inline Real gamma_ratio(long n, const Real& beta) { return gamma_ratio_checked(n, beta).value; }

// Relative deviation of m_n from its power-law model (2/beta)^(2/beta) * n^(2/beta).
inline Real m_model_deviation(long n, const Real& beta) {
    using std::abs;
    using std::pow;
    const Real a = Real(2) / beta;
    const Real model = pow(a, a) * pow(Real(n), a);
    return abs(gamma_ratio(n, beta) / model - 1);
}

// ---------------------------------------------------------------------------
// Weight sequences
// ---------------------------------------------------------------------------

struct AsymptClass {
    bool exponential = false;
    Real exponent{0};   // power law: omega ~ constant * n^exponent
    Real rate{0};       // exponential: omega ~ constant * exp(rate * n)
    Real constant{1};

    Real model(long n) const {
        using std::exp;
        using std::pow;
        return exponential ? constant * exp(rate * Real(n)) : constant * pow(Real(n), exponent);
    }
    // Summability class of sum 1/omega_n.
    bool reciprocal_summable() const { return exponential || exponent > 1; }
    std::string describe() const {
        if (exponential) return "exponential(rate=" + rate.str(8) + ")";
        return "power(exponent=" + exponent.str(8) + ")";
    }
};

struct WeightValue {
    bool zero_action = false;  // query below the shift order: the shift annihilates
    Real value{0};
};

// Weight sequence omega_{n,p} for one space, indexed by the paper-style basis
// index n >= p. eval() uses closed forms (log-Gamma based) so that the
// composition rule omega_{n,p} = omega_n * prod_{j=1..p} omega_{n-j}^2 is an
// independent cross-check, not a tautology.
class WeightSequence {
  public:
    explicit WeightSequence(SpaceSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

    const SpaceSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }

    // Base weight omega_n (shift order 0), n >= 0.
    Real base(long n) const {
        if (n < 0) throw PreconditionError("base weight needs n >= 0");
        using std::exp;
        using std::sqrt;
        switch (spec_.kind) {
            case SpaceKind::ClassicBargmann:
                return sqrt(Real(n + 1));
            case SpaceKind::GeneralizedBargmann:
                return sqrt(gamma_ratio(n + 1, spec_.beta.to_real()));
            case SpaceKind::ThetaFockBargmann:
                return spec_.c_alpha() * exp(spec_.mu().to_real() * Real(n));
            case SpaceKind::PoincareDisk:
                return sqrt(Real(n + 1) * (2 * spec_.nu.to_real() + Real(n)));
        }
        throw ConfigError("unreachable");
    }

    // Explicit zero-action marker below the shift order.
    WeightValue query(long n) const {
        if (n < spec_.p) return {true, Real(0)};
        return {false, eval(n)};
    }

    bool zero_action(long n) const { return n < spec_.p; }

    // omega_{n,p} via the space's closed form, n >= p.
    Real eval(long n) const {
        if (n < spec_.p)
            throw PreconditionError("weight index " + std::to_string(n) +
                                    " is in the zero-action region (n < p=" +
                                    std::to_string(spec_.p) + "); use query()");
        const unsigned guard =
            10 + 2 * static_cast<unsigned>(std::log10(static_cast<double>(n) + 2.0));
        Real hi;
        {
            PrecisionGuard g(working_digits() + guard);
            hi = eval_guarded(n);
        }
        return to_working(hi);
    }

    // Recurrence-indexed weight: the k-th off-diagonal entry (k >= 1) of the
    // tridiagonal model over the basis P_{p}, P_{p+1}, ... .
    Real recurrence_weight(long k) const {
        if (k < 1) throw PreconditionError("recurrence weight index must be >= 1");
        return eval(k + spec_.p - 1);
    }

    // Exact surd form q*sqrt(s) where the family admits one (classic; disk
    // with rational nu).
    std::optional<RootRat> exact_form(long n) const {
        if (n < spec_.p) return std::nullopt;
        switch (spec_.kind) {
            case SpaceKind::ClassicBargmann: {
                Rat q(1);
                for (int j = 1; j <= spec_.p; ++j) q *= Rat(BigInt(n - j + 1));
                return RootRat(q, Rat(BigInt(n + 1)));
            }
            case SpaceKind::PoincareDisk: {
                if (!spec_.nu.is_rational()) return std::nullopt;
                const Rat nu2 = spec_.nu.r * 2;
                Rat q(1);
                for (int j = 1; j <= spec_.p; ++j)
                    q *= Rat(BigInt(n - j + 1)) * (nu2 + Rat(BigInt(n - j)));
                return RootRat(q, Rat(BigInt(n + 1)) * (nu2 + Rat(BigInt(n))));
            }
            default:
                return std::nullopt;
        }
    }

    AsymptClass asympt_class() const {
        using std::exp;
        using std::pow;
        AsymptClass c;
        const int p = spec_.p;
        switch (spec_.kind) {
            case SpaceKind::ClassicBargmann:
                c.exponent = Real(p) + Real(1) / 2;
                break;
            case SpaceKind::GeneralizedBargmann: {
                const Real a = Real(2) / spec_.beta.to_real();
                c.exponent = a * (Real(p) + Real(1) / 2);
                c.constant = pow(a, c.exponent);
                break;
            }
            case SpaceKind::ThetaFockBargmann: {
                const Real mu = spec_.mu().to_real();
                c.exponential = true;
                c.rate = Real(2 * p + 1) * mu;
                c.constant = pow(spec_.c_alpha(), 2 * p + 1) * exp(-mu * Real(p) * Real(p + 1));
                break;
            }
            case SpaceKind::PoincareDisk:
                c.exponent = Real(2 * p + 1);
                break;
        }
        return c;
    }

  private:
    Real eval_guarded(long n) const {
        using std::exp;
        using std::lgamma;
        using std::sqrt;
        const int p = spec_.p;
        switch (spec_.kind) {
            case SpaceKind::ClassicBargmann: {
                // Gamma(n+1)/Gamma(n+1-p) is the falling factorial (n)(n-1)...(n-p+1).
                Real fall(1);
                for (int j = 1; j <= p; ++j) fall *= Real(n + 1 - j);
                return sqrt(Real(n + 1)) * fall;
            }
            case SpaceKind::GeneralizedBargmann: {
                const Real a = Real(2) / spec_.beta.to_real();
                const Real half_m = (lgamma(a * Real(n + 2)) - lgamma(a * Real(n + 1))) / 2;
                return exp(half_m + lgamma(a * Real(n + 1)) - lgamma(a * Real(n + 1 - p)));
            }
            case SpaceKind::ThetaFockBargmann: {
                const Real mu = spec_.mu().to_real();
                const Real expo = mu * (Real(2 * p + 1) * Real(n) - Real(p) * Real(p + 1));
                return pow(spec_.c_alpha(), 2 * p + 1) * exp(expo);
            }
            case SpaceKind::PoincareDisk: {
                const Real nu2 = 2 * spec_.nu.to_real();
                Real fall(1);
                for (int j = 1; j <= p; ++j) fall *= Real(n + 1 - j) * (nu2 + Real(n - j));
                return sqrt(Real(n + 1) * (nu2 + Real(n))) * fall;
            }
        }
        throw ConfigError("unreachable");
    }

    SpaceSpec spec_;
};

inline WeightSequence make_weights(const SpaceSpec& spec) { return WeightSequence(spec); }

// Composition-rule value omega_n * prod_{j=1..p} omega_{n-j}^2 assembled from
// base weights only; the independent route against eval().
inline Real composed_weight(const WeightSequence& ws, long n) {
    if (n < ws.p()) throw PreconditionError("composed weight needs n >= p");
    const unsigned guard =
        10 + 2 * static_cast<unsigned>(std::log10(static_cast<double>(n) + 2.0));
    Real hi;
    {
        PrecisionGuard g(working_digits() + guard);
        Real acc = ws.base(n);
        for (int j = 1; j <= ws.p(); ++j) {
            const Real b = ws.base(n - j);
            acc *= b * b;
        }
        hi = acc;
    }
    return to_working(hi);
}

// ---------------------------------------------------------------------------
// Report-grade asymptotics probe
// ---------------------------------------------------------------------------

struct AsymptRow {
    long n;
    Real value;
    Real model;
    Real ratio;
};

struct AsymptReport {
    AsymptClass cls;
    std::vector<AsymptRow> rows;
    bool monotone_approach = true;  // |ratio - 1| nonincreasing across probes
    bool divergent = false;
    std::string note;
};

inline AsymptReport asymptotic_check(const WeightSequence& ws, const std::vector<long>& probes) {
    for (size_t i = 0; i + 1 < probes.size(); ++i)
        if (probes[i] >= probes[i + 1]) throw PreconditionError("probes must be sorted ascending");
    if (!probes.empty() && probes.front() < ws.p() + 1)
        throw PreconditionError("probes must be >= p+1");
    AsymptReport rep;
    rep.cls = ws.asympt_class();
    using std::abs;
    Real prev_dev{0};
    bool have_prev = false;
    for (long n : probes) {
        AsymptRow row{n, ws.eval(n), rep.cls.model(n), Real(0)};
        row.ratio = row.value / row.model;
        const Real dev = abs(row.ratio - 1);
        if (have_prev && dev > prev_dev) rep.monotone_approach = false;
        if (row.ratio > 100 || row.ratio < Real(1) / 100) rep.divergent = true;
        prev_dev = dev;
        have_prev = true;
        rep.rows.push_back(row);
    }
    if (!rep.monotone_approach) rep.note = "ratio deviation not monotone over probes";
    if (rep.divergent) rep.note += (rep.note.empty() ? "" : "; ") + std::string("ratio far from 1");
    return rep;
}

} // namespace shiftlab

#endif
