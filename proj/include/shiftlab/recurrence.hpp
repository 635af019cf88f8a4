#ifndef SHIFTLAB_RECURRENCE_HPP
#define SHIFTLAB_RECURRENCE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "space_spec.hpp"
#include "weights.hpp"

namespace shiftlab {

// ---------------------------------------------------------------------------
// Dominating sequences gamma_n used to certify |u_n| <= M / gamma_n.
// ---------------------------------------------------------------------------

class GammaSeq {
  public:
    enum class Kind { SqrtNLogN, Geometric, Tabulated };

    static GammaSeq sqrt_n_log_n() {
        GammaSeq g;
        g.kind_ = Kind::SqrtNLogN;
        return g;
    }

    // gamma_n = scale * exp(rate/beta_prime * n). For theta weights the
    // natural choice is rate = (2p+1)*mu and scale = c_alpha^(2p+1).
    static GammaSeq geometric(Real scale, Real rate, Rat beta_prime) {
        if (!(beta_prime > Rat(2)))
            throw ConfigError("geometric dominating sequence requires beta' > 2");
        GammaSeq g;
        g.kind_ = Kind::Geometric;
        g.scale_ = std::move(scale);
        g.rate_ = std::move(rate);
        g.beta_prime_ = std::move(beta_prime);
        return g;
    }

    static GammaSeq geometric_for(const WeightSequence& ws, Rat beta_prime) {
        if (ws.spec().kind != SpaceKind::ThetaFockBargmann)
            throw ConfigError("geometric dominating sequence is derived from theta weights");
        const Real mu = ws.spec().mu().to_real();
        const Real x = Real(2 * ws.p() + 1) * mu;
        using std::pow;
        return geometric(pow(ws.spec().c_alpha(), 2 * ws.p() + 1), x, std::move(beta_prime));
    }

    static GammaSeq tabulated(std::vector<Real> values) {
        GammaSeq g;
        g.kind_ = Kind::Tabulated;
        g.table_ = std::move(values);
        return g;
    }

    static GammaSeq from_name(const std::string& name, const WeightSequence& ws,
                              const Rat& beta_prime = Rat(3)) {
        if (name == "sqrt_n_log_n") return sqrt_n_log_n();
        if (name == "geometric") return geometric_for(ws, beta_prime);
        throw ConfigError("unknown dominating sequence: '" + name + "'");
    }

    Kind kind() const { return kind_; }
    const Rat& beta_prime() const { return beta_prime_; }
    Real rate() const { return rate_; }

    // gamma_n, n >= 1 (sqrt(n)*log(n) vanishes at n = 1 by construction).
    Real eval(long n) const {
        if (n < 1) throw PreconditionError("dominating sequence index must be >= 1");
        using std::exp;
        using std::log;
        using std::sqrt;
        switch (kind_) {
            case Kind::SqrtNLogN: return sqrt(Real(n)) * log(Real(n));
            case Kind::Geometric:
                return scale_ * exp(rate_ * Real(n) / rat_to_real(beta_prime_));
            case Kind::Tabulated:
                if (static_cast<size_t>(n) > table_.size())
                    throw PreconditionError("tabulated dominating sequence too short");
                return table_[static_cast<size_t>(n - 1)];
        }
        throw ConfigError("unreachable");
    }

    // Smallest index with gamma_n > 0 (norm bounds |u_n| <= M/gamma_n start here).
    long first_positive() const { return kind_ == Kind::SqrtNLogN ? 2 : 1; }

    // Is sum 1/gamma_n^2 finite by the sequence's analytic class?
    // sqrt(n)*log(n): sum 1/(n log^2 n) converges by the integral test.
    std::optional<bool> reciprocal_sq_summable() const {
        switch (kind_) {
            case Kind::SqrtNLogN: return true;
            case Kind::Geometric: return true;
            case Kind::Tabulated: return std::nullopt;  // no asymptotic class
        }
        return std::nullopt;
    }

    // Closed-form bound on sum_{n>N} 1/gamma_n^2 where the class admits one.
    std::optional<Real> tail_sum_bound(long N) const {
        using std::exp;
        using std::log;
        switch (kind_) {
            case Kind::SqrtNLogN:
                // integral bound: sum_{n>N} 1/(n log^2 n) <= 1/log(N)
                if (N < 2) return std::nullopt;
                return Real(1) / log(Real(N));
            case Kind::Geometric: {
                const Real q = exp(-2 * rate_ / rat_to_real(beta_prime_));
                return pow(q, N + 1) / (scale_ * scale_ * (1 - q));
            }
            case Kind::Tabulated: return std::nullopt;
        }
        return std::nullopt;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::SqrtNLogN: return "sqrt_n_log_n";
            case Kind::Geometric: return "geometric(beta'=" + rat_to_string(beta_prime_) + ")";
            case Kind::Tabulated: return "tabulated";
        }
        return "?";
    }

  private:
    Kind kind_ = Kind::SqrtNLogN;
    Real scale_{1};
    Real rate_{0};
    Rat beta_prime_{3};
    std::vector<Real> table_;
};

// ---------------------------------------------------------------------------
// Three-term recurrence  u_1 = 1, omega_1 u_2 = lambda,
//                        omega_{n-1} u_{n-1} + omega_n u_{n+1} = lambda u_n
// over recurrence-indexed weights omega_k (k >= 1).
// ---------------------------------------------------------------------------

struct RecurrenceSolution {
    Cplx lambda;
    long N = 0;
    std::vector<Cplx> u;            // u[1..N]; u[0] unused
    std::vector<Real> partial_sums; // partial_sums[n] = sum_{k<=n} |u_k|^2
    Cplx u_next;                    // u_{N+1} by one extra step
    Real agreement{0};              // max relative deviation between the 2x and 4x runs
    unsigned target_digits = 0;
    std::string gamma_used;         // optional tag filled by callers

    const Cplx& at(long n) const { return u.at(static_cast<size_t>(n)); }
    Real partial_sum(long n) const { return partial_sums.at(static_cast<size_t>(n)); }
    Real norm() const {
        using std::sqrt;
        return sqrt(partial_sums.back());
    }
};

using WeightFn = std::function<Real(long)>;

namespace detail {

inline std::vector<Cplx> run_recurrence(const WeightFn& w, const Cplx& lambda, long N,
                                        unsigned digits) {
    PrecisionGuard guard(digits);
    std::vector<Cplx> u(static_cast<size_t>(N) + 2);
    const Cplx lam{to_working(lambda.re), to_working(lambda.im)};
    u[1] = Cplx{Real(1)};
    u[2] = lam / w(1);
    for (long n = 2; n <= N; ++n) {
        const Real wn = w(n);
        if (wn <= 0)
            throw PreconditionError("recurrence weight must be positive at index " +
                                    std::to_string(n));
        u[static_cast<size_t>(n) + 1] =
            (lam * u[static_cast<size_t>(n)] - w(n - 1) * u[static_cast<size_t>(n) - 1]) / wn;
    }
    return u;
}

} // namespace detail

// Solves the recurrence at 2x the target precision and confirms the first
// target digits against a 4x rerun (three-term recurrences can be unstable;
// the rerun certifies the digits we keep).
inline RecurrenceSolution solve_recurrence(const WeightFn& w, const Cplx& lambda, long N,
                                           unsigned target_digits = 0) {
    if (N < 2) throw PreconditionError("recurrence needs N >= 2");
    if (target_digits == 0) target_digits = working_digits();

    const auto u2 = detail::run_recurrence(w, lambda, N, 2 * target_digits);
    const auto u4 = detail::run_recurrence(w, lambda, N, 4 * target_digits);

    using std::abs;
    const Real tol = pow(Real(10), -static_cast<int>(target_digits));
    Real worst{0};
    long worst_n = 0;
    for (long n = 1; n <= N + 1; ++n) {
        const Real mag = abs(u4[static_cast<size_t>(n)]);
        const Real scale = (mag == 0) ? Real(1) : mag;
        const Real rel = abs(u2[static_cast<size_t>(n)] - u4[static_cast<size_t>(n)]) / scale;
        if (rel > worst) worst = rel, worst_n = n;
    }
    if (worst > tol)
        throw PrecisionError("recurrence digits unstable at index " + std::to_string(worst_n) +
                             " (relative deviation " + worst.str(3) + ")");

    RecurrenceSolution sol;
    sol.lambda = lambda;
    sol.N = N;
    sol.target_digits = target_digits;
    sol.agreement = to_working(worst);
    sol.u.resize(static_cast<size_t>(N) + 1);
    sol.partial_sums.resize(static_cast<size_t>(N) + 1);
    Real acc{0};
    for (long n = 1; n <= N; ++n) {
        sol.u[static_cast<size_t>(n)] =
            Cplx{to_working(u4[static_cast<size_t>(n)].re), to_working(u4[static_cast<size_t>(n)].im)};
        acc += norm2(sol.u[static_cast<size_t>(n)]);
        sol.partial_sums[static_cast<size_t>(n)] = acc;
    }
    sol.u_next = Cplx{to_working(u4[static_cast<size_t>(N) + 1].re),
                      to_working(u4[static_cast<size_t>(N) + 1].im)};
    return sol;
}

inline RecurrenceSolution solve_recurrence(const WeightSequence& ws, const Cplx& lambda, long N,
                                           unsigned target_digits = 0) {
    return solve_recurrence([&ws](long k) { return ws.recurrence_weight(k); }, lambda, N,
                            target_digits);
}

inline RecurrenceSolution solve_recurrence(const std::vector<Real>& raw, const Cplx& lambda,
                                           long N, unsigned target_digits = 0) {
    if (static_cast<long>(raw.size()) < N)
        throw PreconditionError("raw weight vector shorter than N");
    return solve_recurrence([&raw](long k) { return raw[static_cast<size_t>(k - 1)]; }, lambda, N,
                            target_digits);
}

// Backward-error style defect: max over 2 <= n <= N-1 of
// |w_{n-1} u_{n-1} + w_n u_{n+1} - lambda u_n| relative to the terms entering
// the sum (plus 1 as an absolute floor), so "k ulp" means the same thing
// whether or not the three terms cancel.
inline Real recurrence_residual(const RecurrenceSolution& sol, const WeightFn& w) {
    using std::abs;
    Real worst{0};
    for (long n = 2; n <= sol.N - 1; ++n) {
        const Cplx lhs = w(n - 1) * sol.at(n - 1);
        const Cplx rhs = w(n) * sol.at(n + 1);
        const Cplx mid = sol.lambda * sol.at(n);
        const Real denom = 1 + abs(lhs) + abs(rhs) + abs(mid);
        const Real r = abs(lhs + rhs - mid) / denom;
        if (r > worst) worst = r;
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

enum class Hypothesis {
    ReciprocalSummability,  // sum 1/omega_n < infinity
    LogConcavity,           // omega_{n-1} omega_{n+1} <= omega_n^2
    DominatedDecay,         // dominating-sequence growth + damping + summability
    StrictDamping,          // damping < 1 for n large + sum 1/gamma_n^2 < infinity
};

inline std::string hypothesis_to_string(Hypothesis h) {
    switch (h) {
        case Hypothesis::ReciprocalSummability: return "reciprocal_summability";
        case Hypothesis::LogConcavity: return "log_concavity";
        case Hypothesis::DominatedDecay: return "dominated_decay";
        case Hypothesis::StrictDamping: return "strict_damping";
    }
    throw ConfigError("unknown hypothesis");
}

inline Hypothesis hypothesis_from_string(const std::string& s) {
    if (s == "reciprocal_summability" || s == "hyp1") return Hypothesis::ReciprocalSummability;
    if (s == "log_concavity" || s == "hyp2") return Hypothesis::LogConcavity;
    if (s == "dominated_decay" || s == "hyp3") return Hypothesis::DominatedDecay;
    if (s == "strict_damping" || s == "alt") return Hypothesis::StrictDamping;
    throw ConfigError("unknown hypothesis: '" + s + "'");
}

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string verdict_to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    throw ConfigError("unknown verdict");
}

struct Witness {
    long n;
    Real lhs;
    Real rhs;
};

struct Certificate {
    Hypothesis hypothesis = Hypothesis::ReciprocalSummability;
    SpaceSpec spec;
    long n_lo = 0, n_hi = 0;
    Verdict verdict = Verdict::Inconclusive;
    Real margin{0};                     // minimum slack observed past the threshold
    std::optional<long> threshold_n0;   // first index from which the inequality holds
    bool certified_all_n = false;       // asymptotic argument extends beyond the range
    bool exact_arithmetic = false;
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;
    std::map<std::string, std::string> details;  // named constants (thresholds etc.)
};

// --- reciprocal summability ------------------------------------------------

inline Certificate check_hyp1(const WeightSequence& ws, long n_max,
                              std::optional<Real> probe_exponent = std::nullopt) {
    if (n_max < 10) throw PreconditionError("summability check needs n_max >= 10");
    Certificate c;
    c.hypothesis = Hypothesis::ReciprocalSummability;
    c.spec = ws.spec();
    c.n_lo = 1;
    c.n_hi = n_max;
    const AsymptClass cls = ws.asympt_class();
    Real partial{0};
    for (long k = 1; k <= n_max; ++k) partial += 1 / ws.recurrence_weight(k);
    c.details["partial_sum"] = partial.str(20);
    c.details["asymptotic_class"] = cls.describe();
    const Real expo = probe_exponent.value_or(cls.exponent);
    if (cls.exponential) {
        // 1/omega decays geometrically; tail below the last computed term over (1 - q).
        using std::exp;
        const Real q = exp(-cls.rate);
        const Real tail = (1 / ws.recurrence_weight(n_max)) * q / (1 - q);
        c.details["tail_bound"] = tail.str(20);
        c.verdict = Verdict::Pass;
        c.certified_all_n = true;
        c.margin = cls.rate;
        c.notes.push_back("geometric tail bound");
    } else if (expo > 1) {
        // integral comparison: sum_{n>N} n^-t <= N^(1-t)/(t-1) after the ratio settles
        using std::pow;
        const Real t = expo;
        const Real ratio = ws.recurrence_weight(n_max) / cls.model(n_max + ws.p() - 1);
        const Real tail = pow(Real(n_max), 1 - t) / ((t - 1) * ratio) * 2;
        c.details["tail_bound"] = tail.str(20);
        c.verdict = Verdict::Pass;
        c.certified_all_n = true;
        c.margin = t - 1;
        c.notes.push_back("power-law exponent > 1; integral tail bound");
    } else {
        c.verdict = Verdict::Fail;
        c.margin = expo - 1;
        c.notes.push_back("growth exponent <= 1: reciprocal series diverges");
    }
    c.witnesses.push_back({n_max, partial, Real(0)});
    return c;
}

// --- log-concavity -----------------------------------------------------------

inline Certificate check_hyp2(const WeightSequence& ws, long n_lo, long n_hi) {
    if (n_lo < ws.p() + 1) throw PreconditionError("log-concavity range must start at n >= p+1");
    if (n_hi < n_lo) throw PreconditionError("empty range");
    Certificate c;
    c.hypothesis = Hypothesis::LogConcavity;
    c.spec = ws.spec();
    c.n_lo = n_lo;
    c.n_hi = n_hi;

    const bool geometric = ws.asympt_class().exponential;
    if (geometric) {
        // log omega is affine in n, so the inequality is an exact equality.
        c.verdict = Verdict::Pass;
        c.exact_arithmetic = true;
        c.certified_all_n = true;
        c.margin = 0;
        c.notes.push_back("geometric weights: equality at every n");
        c.witnesses.push_back({n_lo, ws.eval(n_lo - 1) * ws.eval(n_lo + 1),
                               ws.eval(n_lo) * ws.eval(n_lo)});
        return c;
    }

    const bool exact = ws.exact_form(n_lo).has_value();
    c.exact_arithmetic = exact;
    Real min_margin{1};
    long min_at = n_lo;
    for (long n = n_lo; n <= n_hi; ++n) {
        if (exact) {
            const RootRat lhs = *ws.exact_form(n - 1) * *ws.exact_form(n + 1);
            const RootRat rhs = *ws.exact_form(n) * *ws.exact_form(n);
            if (compare(lhs, rhs) > 0) {
                c.verdict = Verdict::Fail;
                c.witnesses.push_back({n, lhs.to_real(), rhs.to_real()});
                c.margin = (rhs.to_real() - lhs.to_real()) / rhs.to_real();
                c.notes.push_back("exact comparison violated");
                return c;
            }
            const Real rel = (rhs.to_real() - lhs.to_real()) / rhs.to_real();
            if (rel < min_margin) min_margin = rel, min_at = n;
        } else {
            PrecisionGuard g(working_digits() + 15);
            const Real lhs = ws.eval(n - 1) * ws.eval(n + 1);
            const Real rhs = ws.eval(n) * ws.eval(n);
            const Real rel = (rhs - lhs) / rhs;
            if (rel < -ulps_of(Real(1), 10)) {
                c.verdict = Verdict::Fail;
                c.witnesses.push_back({n, to_working(lhs), to_working(rhs)});
                c.margin = to_working(rel);
                return c;
            }
            if (rel < min_margin) min_margin = to_working(rel), min_at = n;
        }
    }
    c.verdict = Verdict::Pass;
    c.margin = min_margin;
    c.witnesses.push_back({min_at, ws.eval(min_at - 1) * ws.eval(min_at + 1),
                           ws.eval(min_at) * ws.eval(min_at)});
    if (!exact) c.notes.push_back("floating comparison with guard digits (no exact form)");
    return c;
}

// --- damping machinery -------------------------------------------------------

// (|lambda|/omega_n)(gamma_{n+1}/gamma_n) + (omega_{n-1}/omega_n)(gamma_{n+1}/gamma_{n-1})
inline Real damping_lhs(const WeightFn& w, const GammaSeq& gamma, const Real& lambda_abs,
                        long n) {
    const Real gn1 = gamma.eval(n + 1);
    return (lambda_abs / w(n)) * (gn1 / gamma.eval(n)) +
           (w(n - 1) / w(n)) * (gn1 / gamma.eval(n - 1));
}

// Closed-form threshold data for geometric weights with a geometric
// dominating sequence: damping(n) = m_b * exp(-x n) + C_b exactly.
struct GeometricThreshold {
    Real m_b;
    Real C_b;
    Real x;        // weight growth rate
    long n0 = 2;   // first index with damping < 1 (clamped to >= 2)
};

inline GeometricThreshold geometric_damping_threshold(const WeightSequence& ws,
                                                      const Rat& beta_prime,
                                                      const Real& lambda_abs) {
    if (ws.spec().kind != SpaceKind::ThetaFockBargmann)
        throw ConfigError("closed-form threshold requires geometric (theta) weights");
    if (!(beta_prime > Rat(2))) throw ConfigError("threshold requires beta' > 2");
    using std::exp;
    using std::floor;
    using std::log;
    const AsymptClass cls = ws.asympt_class();
    const Real x = cls.rate;
    const Real bp = rat_to_real(beta_prime);
    // recurrence-indexed prefactor: omega'_k = K * exp(x k)
    const Real K = cls.constant * exp(x * Real(ws.p() - 1));
    GeometricThreshold t;
    t.x = x;
    t.m_b = (lambda_abs / K) * exp(x / bp);
    t.C_b = exp(-x * (1 - 2 / bp));
    long n0 = 1;
    if (t.m_b > (1 - t.C_b) * exp(-x)) {
        const Real raw = log(t.m_b / (1 - t.C_b)) / x;
        n0 = static_cast<long>(floor(raw)) + 1;
        if (n0 < 1) n0 = 1;
    }
    t.n0 = std::max<long>(n0, 2);
    return t;
}

namespace detail {

struct DampingScan {
    std::optional<long> threshold_n0;  // first index from which lhs <= bound holds onward
    Real min_margin{0};                // min of (1 - lhs) past the threshold
    long min_at = 0;
    Real last_lhs{0};
    bool tail_monotone_decreasing = true;  // over the last half of the range
    std::vector<Witness> extremes;
};

inline DampingScan scan_damping(const WeightFn& w, const GammaSeq& gamma, const Real& lambda_abs,
                                long n_lo, long n_hi, bool strict) {
    DampingScan out;
    long last_violation = n_lo - 1;
    Real min_margin{2};
    long min_at = 0;
    Real prev{0};
    const long half = n_lo + (n_hi - n_lo) / 2;
    for (long n = n_lo; n <= n_hi; ++n) {
        const Real lhs = damping_lhs(w, gamma, lambda_abs, n);
        const bool ok = strict ? (lhs < 1) : (lhs <= 1);
        if (!ok) last_violation = n;
        const Real margin = 1 - lhs;
        if (margin < min_margin) min_margin = margin, min_at = n;
        if (n > half && lhs > prev) out.tail_monotone_decreasing = false;
        if (n == n_lo || n == n_hi) out.extremes.push_back({n, lhs, Real(1)});
        prev = lhs;
        out.last_lhs = lhs;
    }
    if (last_violation < n_hi) {
        out.threshold_n0 = last_violation + 1;
        // margin past the threshold
        Real mm{2};
        long mat = 0;
        for (long n = *out.threshold_n0; n <= n_hi; ++n) {
            const Real m = 1 - damping_lhs(w, gamma, lambda_abs, n);
            if (m < mm) mm = m, mat = n;
        }
        out.min_margin = mm;
        out.min_at = mat;
    } else {
        out.min_margin = min_margin;
        out.min_at = min_at;
    }
    return out;
}

} // namespace detail

// --- dominating-sequence certification  --------------------------------------

inline Certificate check_hyp3(const WeightSequence& ws, const GammaSeq& gamma,
                              const Real& lambda_abs, long n_lo, long n_hi) {
    if (n_lo < 3) throw PreconditionError("dominated-decay range must start at n >= 3");
    if (n_hi < n_lo) throw PreconditionError("empty range");
    Certificate c;
    c.hypothesis = Hypothesis::DominatedDecay;
    c.spec = ws.spec();
    c.n_lo = n_lo;
    c.n_hi = n_hi;
    c.details["gamma"] = gamma.name();
    c.details["lambda_abs"] = lambda_abs.str(20);
    const WeightFn w = [&ws](long k) { return ws.recurrence_weight(k); };

    // Growth condition: omega_n gamma_n / gamma_{n+1} >= n^(1+alpha) for some alpha > 0.
    using std::log;
    Real best_alpha{1000};
    long alpha_at = n_lo;
    for (long n = n_lo; n <= n_hi; ++n) {
        const Real lhs = w(n) * gamma.eval(n) / gamma.eval(n + 1);
        const Real alpha_n = log(lhs) / log(Real(n)) - 1;
        if (alpha_n < best_alpha) best_alpha = alpha_n, alpha_at = n;
    }
    c.details["best_alpha"] = best_alpha.str(20);
    const bool growth_ok = best_alpha > 0;
    if (!growth_ok)
        c.witnesses.push_back({alpha_at, w(alpha_at) * gamma.eval(alpha_at) / gamma.eval(alpha_at + 1),
                               pow(Real(alpha_at), Real(1))});

    // Damping bound <= 1 from some threshold onward.
    const auto scan = detail::scan_damping(w, gamma, lambda_abs, n_lo, n_hi, false);
    c.threshold_n0 = scan.threshold_n0;
    for (const auto& e : scan.extremes) c.witnesses.push_back(e);
    const bool damping_ok = scan.threshold_n0.has_value();
    if (damping_ok) {
        c.margin = scan.min_margin;
        c.details["damping_min_margin_at"] = std::to_string(scan.min_at);
        // Observed margin sequence n*(1 - lhs) at the extreme, for the report.
        c.details["scaled_margin_at_min"] = (Real(scan.min_at) * scan.min_margin).str(20);
    }

    // Summability of 1/gamma^2 by the sequence's class.
    const auto summable = gamma.reciprocal_sq_summable();
    const bool summ_ok = summable.value_or(false);
    if (!summable.has_value()) c.notes.push_back("tabulated gamma: summability not decidable");

    // Closed-form threshold when both weights and gamma are geometric.
    if (ws.asympt_class().exponential && gamma.kind() == GammaSeq::Kind::Geometric) {
        const auto t = geometric_damping_threshold(ws, gamma.beta_prime(), lambda_abs);
        c.details["m_b"] = t.m_b.str(20);
        c.details["C_b"] = t.C_b.str(20);
        c.details["closed_form_threshold"] = std::to_string(t.n0);
        // The scan threshold and closed form must agree where both apply.
        if (damping_ok && *c.threshold_n0 > std::max(t.n0, n_lo))
            c.notes.push_back("scan threshold exceeds closed form");
        c.certified_all_n = damping_ok && summ_ok && growth_ok;
        if (c.certified_all_n) c.notes.push_back("geometric damping decreasing in n: extends to all n");
    } else if (damping_ok && scan.tail_monotone_decreasing) {
        c.certified_all_n = growth_ok && summ_ok;
        if (c.certified_all_n) c.notes.push_back("damping monotone decreasing over range tail");
    }

    if (growth_ok && damping_ok && summ_ok)
        c.verdict = Verdict::Pass;
    else if (!growth_ok || (!damping_ok && n_hi - n_lo > 100))
        c.verdict = Verdict::Fail;
    else
        c.verdict = Verdict::Inconclusive;
    if (!growth_ok) c.notes.push_back("growth condition fails: no alpha > 0");
    if (!damping_ok) c.notes.push_back("damping bound never locks in range");
    return c;
}

// Alternative certification: strict damping for n large plus summability,
// without the growth condition.
inline Certificate check_alt_strict(const WeightSequence& ws, const GammaSeq& gamma,
                                    const Real& lambda_abs, long n_lo, long n_hi) {
    if (n_lo < 3) throw PreconditionError("strict-damping range must start at n >= 3");
    Certificate c;
    c.hypothesis = Hypothesis::StrictDamping;
    c.spec = ws.spec();
    c.n_lo = n_lo;
    c.n_hi = n_hi;
    c.details["gamma"] = gamma.name();
    c.details["lambda_abs"] = lambda_abs.str(20);
    const WeightFn w = [&ws](long k) { return ws.recurrence_weight(k); };
    const auto scan = detail::scan_damping(w, gamma, lambda_abs, n_lo, n_hi, true);
    c.threshold_n0 = scan.threshold_n0;
    for (const auto& e : scan.extremes) c.witnesses.push_back(e);
    const auto summable = gamma.reciprocal_sq_summable();
    if (scan.threshold_n0 && summable.value_or(false)) {
        c.verdict = Verdict::Pass;
        c.margin = scan.min_margin;
        c.certified_all_n = scan.tail_monotone_decreasing ||
                            (ws.asympt_class().exponential &&
                             gamma.kind() == GammaSeq::Kind::Geometric);
    } else if (!scan.threshold_n0) {
        c.verdict = (n_hi - n_lo > 100) ? Verdict::Fail : Verdict::Inconclusive;
        c.notes.push_back("strict damping never holds in range");
    } else {
        c.verdict = Verdict::Inconclusive;
        c.notes.push_back("summability of 1/gamma^2 not certified");
    }
    return c;
}

// ---------------------------------------------------------------------------
// l^2 certification report for a computed solution
// ---------------------------------------------------------------------------

struct L2Report {
    Real M{0};                      // smallest M with |u_n| <= M/gamma_n over the range
    long m_from = 2;
    bool locked = false;            // damping holds from threshold to the end of range
    std::optional<long> threshold_n0;
    Real damping_margin{0};
    std::optional<Real> tail_bound; // M^2 * sum_{n>N} 1/gamma_n^2 (closed form)
    Real partial_sum{0};
    bool certified = false;         // bound extends to all n > N
    std::string note;
};

inline L2Report certify_l2(const RecurrenceSolution& sol, const WeightFn& w,
                           const GammaSeq& gamma) {
    using std::abs;
    L2Report rep;
    rep.m_from = gamma.first_positive();
    Real M{0};
    for (long n = rep.m_from; n <= sol.N; ++n) {
        const Real cand = abs(sol.at(n)) * gamma.eval(n);
        if (cand > M) M = cand;
    }
    rep.M = M;
    rep.partial_sum = sol.partial_sums.back();

    const long n_lo = std::max<long>(3, rep.m_from + 1);
    if (sol.N > n_lo) {
        const auto scan = detail::scan_damping(w, gamma, abs(sol.lambda), n_lo, sol.N, false);
        rep.threshold_n0 = scan.threshold_n0;
        rep.locked = scan.threshold_n0.has_value();
        rep.damping_margin = scan.min_margin;
        const auto summ = gamma.reciprocal_sq_summable();
        rep.certified = rep.locked && summ.value_or(false) &&
                        (scan.tail_monotone_decreasing || scan.min_margin > 0);
    }
    if (auto t = gamma.tail_sum_bound(sol.N)) rep.tail_bound = M * M * (*t);
    if (!rep.locked)
        rep.note = "damping bound never holds on the computed range: certification impossible";
    return rep;
}

inline L2Report certify_l2(const RecurrenceSolution& sol, const WeightSequence& ws,
                           const GammaSeq& gamma) {
    return certify_l2(sol, [&ws](long k) { return ws.recurrence_weight(k); }, gamma);
}

} // namespace shiftlab

#endif
