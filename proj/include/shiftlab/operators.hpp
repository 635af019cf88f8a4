#ifndef SHIFTLAB_OPERATORS_HPP
#define SHIFTLAB_OPERATORS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "rational.hpp"
#include "recurrence.hpp"
#include "weights.hpp"

namespace shiftlab {

// ---------------------------------------------------------------------------
// Truncated shift models with a trusted-coordinate window.
//
// A truncation is not the infinite operator: each apply() marks which output
// coordinates equal the infinite-model image. Finitely supported inputs
// (tail_bound == 0, support inside the truncation) never lose trust.
// ---------------------------------------------------------------------------

enum class OpKind { BackwardShift, ForwardShift, JacobiSum };

inline std::string op_kind_to_string(OpKind k) {
    switch (k) {
        case OpKind::BackwardShift: return "backward_shift";
        case OpKind::ForwardShift: return "forward_shift";
        case OpKind::JacobiSum: return "jacobi_sum";
    }
    throw ConfigError("unknown operator kind");
}

inline OpKind op_kind_from_string(const std::string& s) {
    if (s == "backward_shift" || s == "shift") return OpKind::BackwardShift;
    if (s == "forward_shift" || s == "adjoint") return OpKind::ForwardShift;
    if (s == "jacobi_sum" || s == "sum") return OpKind::JacobiSum;
    throw ConfigError("unknown operator kind: '" + s + "'");
}

struct VectorState {
    long offset = 0;                  // basis index of coeffs[0]
    std::vector<Cplx> coeffs;
    std::optional<Real> tail_bound;   // bound on sum_{n>top}|a_n|^2; 0 = finitely supported
    long trusted_lo = 0;              // window of coordinates equal to the infinite model
    long trusted_hi = -1;

    long top() const { return offset + static_cast<long>(coeffs.size()) - 1; }

    const Cplx& at(long n) const {
        static const Cplx zero{};
        if (n < offset || n > top()) return zero;
        return coeffs[static_cast<size_t>(n - offset)];
    }

    Cplx& slot(long n) { return coeffs.at(static_cast<size_t>(n - offset)); }

    bool finitely_supported() const { return tail_bound.has_value() && *tail_bound == 0; }

    Real norm_sq(long lo, long hi) const {
        Real acc{0};
        for (long n = std::max(lo, offset); n <= std::min(hi, top()); ++n) acc += norm2(at(n));
        return acc;
    }

    Real norm() const {
        using std::sqrt;
        return sqrt(norm_sq(offset, top()));
    }

    Real trusted_norm() const {
        using std::sqrt;
        return sqrt(norm_sq(trusted_lo, trusted_hi));
    }

    static VectorState basis(long index, long offset, long dim) {
        if (index < offset || index >= offset + dim)
            throw DimensionError("basis index outside truncation");
        VectorState v;
        v.offset = offset;
        v.coeffs.assign(static_cast<size_t>(dim), Cplx{});
        v.slot(index) = Cplx{Real(1)};
        v.tail_bound = Real(0);
        v.trusted_lo = offset;
        v.trusted_hi = offset + dim - 1;
        return v;
    }
};

class TruncatedOperator {
  public:
    TruncatedOperator(OpKind kind, const WeightSequence& ws, long dim)
        : kind_(kind), dim_(dim) {
        if (kind == OpKind::JacobiSum) {
            offset_ = 1;
            if (dim < 2) throw DimensionError("Jacobi truncation needs dim >= 2");
            for (long k = 1; k <= dim - 1; ++k) band_.push_back(ws.recurrence_weight(k));
        } else {
            offset_ = ws.p();
            if (dim < 2) throw DimensionError("shift truncation needs dim >= p+2 coefficients");
            for (long n = offset_; n <= offset_ + dim - 2; ++n) band_.push_back(ws.eval(n));
        }
        name_ = ws.spec().describe();
    }

    TruncatedOperator(OpKind kind, std::vector<Real> band, long dim, long offset)
        : kind_(kind), dim_(dim), offset_(offset), band_(std::move(band)), name_("raw") {
        if (static_cast<long>(band_.size()) < dim - 1)
            throw DimensionError("band shorter than dim-1");
    }

    OpKind kind() const { return kind_; }
    long dim() const { return dim_; }
    long offset() const { return offset_; }
    long top() const { return offset_ + dim_ - 1; }
    const std::string& weight_name() const { return name_; }

    // Acting weight for output coordinate n (BackwardShift: out[n] = w(n) v[n+1];
    // ForwardShift: out[n+1] = w(n) v[n]; JacobiSum off-diagonal between n, n+1).
    const Real& band_weight(long n) const {
        if (n < offset_ || n > top() - 1) throw DimensionError("band index outside truncation");
        return band_[static_cast<size_t>(n - offset_)];
    }

    // Dense matrix entry over basis indices (row, col), for inspection/tests.
    Real entry(long row, long col) const {
        if (row < offset_ || row > top() || col < offset_ || col > top())
            throw DimensionError("entry outside truncation");
        switch (kind_) {
            case OpKind::BackwardShift:
                return (col == row + 1) ? band_weight(row) : Real(0);
            case OpKind::ForwardShift:
                return (row == col + 1) ? band_weight(col) : Real(0);
            case OpKind::JacobiSum:
                if (col == row + 1) return band_weight(row);
                if (row == col + 1) return band_weight(col);
                return Real(0);
        }
        throw ConfigError("unreachable");
    }

    VectorState apply(const VectorState& v) const {
        if (v.offset != offset_ || static_cast<long>(v.coeffs.size()) != dim_)
            throw DimensionError("state and operator truncations differ");
        VectorState out;
        out.offset = offset_;
        out.coeffs.assign(static_cast<size_t>(dim_), Cplx{});
        const bool finite = v.finitely_supported();
        switch (kind_) {
            case OpKind::BackwardShift: {
                for (long n = offset_; n <= top() - 1; ++n)
                    out.slot(n) = band_weight(n) * v.at(n + 1);
                out.tail_bound = finite ? std::optional<Real>(Real(0)) : std::nullopt;
                out.trusted_lo = std::max(v.trusted_lo, offset_);
                out.trusted_hi = finite ? top() : std::min(v.trusted_hi, top()) - 1;
                break;
            }
            case OpKind::ForwardShift: {
                if (!finite || abs(v.at(top())) != 0)
                    throw TruncationError("forward shift would push mass past the truncation");
                for (long n = offset_; n <= top() - 1; ++n)
                    out.slot(n + 1) = band_weight(n) * v.at(n);
                out.tail_bound = Real(0);
                out.trusted_lo = offset_;
                out.trusted_hi = top();
                break;
            }
            case OpKind::JacobiSum: {
                for (long n = offset_; n <= top(); ++n) {
                    Cplx acc{};
                    if (n > offset_) acc = acc + band_weight(n - 1) * v.at(n - 1);
                    if (n < top()) acc = acc + band_weight(n) * v.at(n + 1);
                    out.slot(n) = acc;
                }
                out.trusted_lo = (v.trusted_lo <= offset_) ? offset_ : v.trusted_lo + 1;
                if (finite && abs(v.at(top())) == 0) {
                    out.tail_bound = Real(0);
                    out.trusted_hi = top();
                } else if (finite) {
                    // computed coordinates are exact; one coefficient escapes the truncation
                    out.tail_bound = std::nullopt;
                    out.trusted_hi = top();
                } else {
                    out.tail_bound = std::nullopt;
                    out.trusted_hi = std::min(v.trusted_hi, top()) - 1;
                }
                break;
            }
        }
        if (out.trusted_hi < out.trusted_lo)
            throw TruncationError("trusted window exhausted by truncated apply");
        return out;
    }

  private:
    OpKind kind_;
    long dim_;
    long offset_;
    std::vector<Real> band_;
    std::string name_;
};

inline TruncatedOperator build_operator(OpKind kind, const WeightSequence& ws, long N) {
    if (N < ws.p() + 2) throw DimensionError("truncation needs N >= p+2");
    return TruncatedOperator(kind, ws, N);
}

inline TruncatedOperator build_operator(OpKind kind, const std::vector<Real>& band, long N,
                                        long offset = 1) {
    return TruncatedOperator(kind, std::vector<Real>(band), N, offset);
}

// ---------------------------------------------------------------------------
// Eigenvectors
// ---------------------------------------------------------------------------

// phi_lambda for the pure backward shift: coefficients a_k = prod_{j=p}^{k-1} lambda/omega_{j,p},
// a_p = 1. Requires the weights to outgrow |lambda| at the truncation edge so the dropped
// tail has a geometric bound.
inline VectorState eigenvector_Hp(const WeightSequence& ws, const Cplx& lambda, long N) {
    if (N < ws.p() + 2) throw DimensionError("eigenvector truncation needs N >= p+2");
    const long p = ws.p();
    VectorState v;
    v.offset = p;
    v.coeffs.assign(static_cast<size_t>(N), Cplx{});
    v.slot(p) = Cplx{Real(1)};
    using std::abs;
    for (long k = p; k < p + N - 1; ++k) v.slot(k + 1) = v.at(k) * (lambda / ws.eval(k));
    const long topi = v.top();
    if (abs(lambda) == 0) {
        v.tail_bound = Real(0);
    } else {
        const Real r = abs(lambda) / ws.eval(topi);
        if (r >= 1)
            throw ConstructionError("eigenvector coefficients do not decay: |lambda| >= omega at truncation edge");
        const Real a_top = abs(v.at(topi));
        v.tail_bound = a_top * a_top * r * r / (1 - r * r);
    }
    v.trusted_lo = p;
    v.trusted_hi = topi;
    return v;
}

// Eigenvector of the symmetrized operator via the three-term recurrence.
struct EigenSumResult {
    VectorState state;       // coordinates u_1..u_N at offset 1
    RecurrenceSolution sol;
    Cplx last_residual;      // -omega_N * u_{N+1}: the only nonzero defect coordinate
    std::optional<Real> residual_bound;  // omega_N * M / gamma_{N+1} when certified
    L2Report l2;
    std::vector<std::string> warnings;
};

inline EigenSumResult eigenvector_sum(const WeightSequence& ws, const Cplx& lambda, long N,
                                      const GammaSeq& gamma = GammaSeq::sqrt_n_log_n(),
                                      unsigned target_digits = 0) {
    EigenSumResult res;
    res.sol = solve_recurrence(ws, lambda, N, target_digits);
    res.state.offset = 1;
    res.state.coeffs.assign(static_cast<size_t>(N), Cplx{});
    for (long n = 1; n <= N; ++n) res.state.slot(n) = res.sol.at(n);
    res.state.trusted_lo = 1;
    res.state.trusted_hi = N;
    const Real wN = ws.recurrence_weight(N);
    res.last_residual = Cplx{Real(0)} - wN * res.sol.u_next;
    res.l2 = certify_l2(res.sol, ws, gamma);
    if (res.l2.locked) {
        res.residual_bound = wN * res.l2.M / gamma.eval(N + 1);
        if (res.l2.tail_bound) res.state.tail_bound = res.l2.tail_bound;
    } else {
        res.warnings.push_back("l2 certification did not lock; tail bound unavailable");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

struct OrbitRow {
    long step;
    Real norm;          // over the trusted window
    Real residual;      // ||v_k - lambda^k v_0|| / ||v_0|| over the window, if lambda given
    long window_lo;
    long window_hi;
};

struct OrbitTrace {
    std::vector<OrbitRow> rows;
    VectorState final_state;
};

inline OrbitTrace orbit(const TruncatedOperator& op, VectorState v, long steps,
                        std::optional<Cplx> lambda = std::nullopt) {
    if (steps < 0) throw PreconditionError("orbit needs steps >= 0");
    OrbitTrace trace;
    const VectorState v0 = v;
    Cplx lam_pow{Real(1)};
    using std::sqrt;
    const Real base = v0.trusted_norm();
    for (long s = 0; s <= steps; ++s) {
        OrbitRow row;
        row.step = s;
        row.norm = v.trusted_norm();
        row.window_lo = v.trusted_lo;
        row.window_hi = v.trusted_hi;
        row.residual = Real(0);
        if (lambda && base > 0) {
            Real acc{0};
            for (long n = v.trusted_lo; n <= v.trusted_hi; ++n)
                acc += norm2(v.at(n) - lam_pow * v0.at(n));
            row.residual = sqrt(acc) / base;
        }
        trace.rows.push_back(row);
        if (s < steps) {
            try {
                v = op.apply(v);
            } catch (const TruncationError& e) {
                throw TruncationError(std::string(e.what()) + " (orbit step " +
                                      std::to_string(s + 1) + ")");
            }
            if (lambda) lam_pow = lam_pow * *lambda;
        }
    }
    trace.final_state = std::move(v);
    return trace;
}

// ---------------------------------------------------------------------------
// Periodic points of the symmetrized operator: combinations of eigenvectors at
// roots of unity delta_m = e^{2 i pi n_m / k_m}, period l = prod k_m.
// ---------------------------------------------------------------------------

struct RootOfUnity {
    long num = 0;
    long den = 1;
};

struct PeriodicSumResult {
    VectorState state;
    long period_l = 1;
    Real window_defect{0};   // ||(J^l - I) phi|| over the trusted window
    long window_lo = 1, window_hi = 0;
    std::optional<Real> tail_bound;  // representation error of the truncation
    std::vector<L2Report> per_root;
    std::vector<std::string> warnings;
};

inline PeriodicSumResult periodic_point_sum(const WeightSequence& ws,
                                            const std::vector<RootOfUnity>& roots,
                                            const std::vector<Cplx>& amplitudes, long N,
                                            const GammaSeq& gamma = GammaSeq::sqrt_n_log_n()) {
    if (roots.empty() || roots.size() != amplitudes.size())
        throw PreconditionError("periodic point needs matching roots and amplitudes");
    for (const auto& r : roots)
        if (r.den < 1) throw PreconditionError("root denominators must be >= 1");
    PeriodicSumResult res;
    long l = 1;
    for (const auto& r : roots) l *= r.den;
    res.period_l = l;
    if (N < l + 2) throw DimensionError("truncation too small for one period");

    // The defect measurement applies the unbounded band l times, amplifying
    // rounding noise by up to (2 omega'_N)^l; guard digits absorb that factor.
    const unsigned base_digits = working_digits();
    unsigned extra;
    {
        using std::ceil;
        using std::log10;
        double per_step = static_cast<double>(log10(ws.recurrence_weight(N))) + 0.6;
        if (per_step < 1) per_step = 1;
        extra = static_cast<unsigned>(ceil(per_step * static_cast<double>(l))) + 20;
    }
    if (base_digits + extra > kMaxDigits)
        throw PrecisionError("periodic defect needs " + std::to_string(base_digits + extra) +
                             " digits; reduce the period or truncation");
    PrecisionGuard precision(base_digits + extra);

    res.state.offset = 1;
    res.state.coeffs.assign(static_cast<size_t>(N), Cplx{});
    res.state.trusted_lo = 1;
    res.state.trusted_hi = N;
    using std::abs;
    using std::sqrt;
    Real tail{0};
    bool tail_ok = true;
    for (size_t m = 0; m < roots.size(); ++m) {
        const Cplx delta = unit_root(roots[m].num, roots[m].den);
        auto eig = eigenvector_sum(ws, delta, N, gamma);
        for (long n = 1; n <= N; ++n)
            res.state.slot(n) = res.state.at(n) + amplitudes[m] * eig.sol.at(n);
        res.per_root.push_back(eig.l2);
        for (auto& w : eig.warnings) res.warnings.push_back(w);
        if (eig.l2.locked && eig.l2.tail_bound)
            tail += abs(amplitudes[m]) * sqrt(*eig.l2.tail_bound);
        else
            tail_ok = false;
    }

    // Defect of one full period on the trusted window.
    const TruncatedOperator J = build_operator(OpKind::JacobiSum, ws, N);
    VectorState it = res.state;
    for (long s = 0; s < l; ++s) it = J.apply(it);
    res.window_lo = it.trusted_lo;
    res.window_hi = it.trusted_hi;
    Real acc{0};
    for (long n = it.trusted_lo; n <= it.trusted_hi; ++n)
        acc += norm2(it.at(n) - res.state.at(n));

    // Round every caller-visible value to the ambient precision.
    set_working_digits(base_digits);
    for (auto& c : res.state.coeffs) c = Cplx{to_working(c.re), to_working(c.im)};
    res.window_defect = to_working(sqrt(acc));
    if (tail_ok) {
        res.tail_bound = to_working(tail * tail);
        res.state.tail_bound = res.tail_bound;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Periodic points of the pure backward shift (block construction) and exact
// block telescoping.
// ---------------------------------------------------------------------------

// Coefficient of the k-th block of phi_{s,Np}: prod_{j=s}^{k*Np+s-1} 1/omega_{j,p}.
inline Real block_coefficient(const WeightSequence& ws, long s, long Np, long k) {
    Real c{1};
    for (long j = s; j <= k * Np + s - 1; ++j) c /= ws.eval(j);
    return c;
}

inline std::optional<RootRat> block_coefficient_exact(const WeightSequence& ws, long s, long Np,
                                                      long k) {
    RootRat c(Rat(1), Rat(1));
    for (long j = s; j <= k * Np + s - 1; ++j) {
        auto w = ws.exact_form(j);
        if (!w) return std::nullopt;
        c = c / *w;
    }
    return c;
}

struct PeriodicHpResult {
    VectorState state;        // offset p, support at s and k*Np+s
    long s = 0, period = 1;
    long blocks = 0;          // number of blocks inside the truncation
    bool exact = false;       // periodicity verified in exact arithmetic
    Real max_deviation{0};    // floating-path deviation over the trusted window
    long window_lo = 0, window_hi = -1;
};

inline PeriodicHpResult periodic_point_Hp(const WeightSequence& ws, long s, long N_period,
                                          long N_trunc) {
    const long p = ws.p();
    if (s < p) throw PreconditionError("support index must satisfy s >= p");
    if (N_period < std::max<long>(1, s)) throw PreconditionError("period must satisfy N >= s");
    if (N_period <= s - p)
        throw PreconditionError("period must exceed s - p so the base term vanishes under iteration");
    if (s + 3 * N_period > N_trunc)
        throw DimensionError("truncation must contain at least 3 blocks (s + 3N <= N_trunc)");

    PeriodicHpResult res;
    res.s = s;
    res.period = N_period;
    const long dim = N_trunc - p + 1;
    res.state.offset = p;
    res.state.coeffs.assign(static_cast<size_t>(dim), Cplx{});
    res.state.slot(s) = Cplx{Real(1)};
    long kmax = 0;
    {
        Real c{1};
        for (long k = 1; k * N_period + s <= N_trunc; ++k) {
            for (long j = (k - 1) * N_period + s; j <= k * N_period + s - 1; ++j) c /= ws.eval(j);
            res.state.slot(k * N_period + s) = Cplx{c};
            kmax = k;
        }
    }
    res.blocks = kmax;
    res.state.trusted_lo = p;
    res.state.trusted_hi = res.state.top();
    // Geometric remainder past the last block.
    {
        const Real c_last = abs(res.state.at(kmax * N_period + s));
        const Real r = Real(1) / pow(ws.eval(kmax * N_period + s), N_period);
        res.state.tail_bound = (r < 1) ? c_last * c_last * r * r / (1 - r * r)
                                       : c_last * c_last;  // crude if weights not yet > 1
    }

    // One period of the backward shift; compare on the surviving window.
    const TruncatedOperator H = build_operator(OpKind::BackwardShift, ws, dim);
    VectorState it = res.state;
    it.tail_bound = std::nullopt;  // the true vector continues past the truncation
    for (long step = 0; step < N_period; ++step) it = H.apply(it);
    res.window_lo = it.trusted_lo;
    res.window_hi = it.trusted_hi;
    using std::abs;
    Real worst{0};
    for (long n = it.trusted_lo; n <= it.trusted_hi; ++n) {
        const Real d = abs(it.at(n) - res.state.at(n));
        if (d > worst) worst = d;
    }
    res.max_deviation = worst;

    // Exact route where the weights admit closed radicals.
    if (ws.exact_form(s).has_value()) {
        bool all_exact = true;
        for (long k = 1; k <= std::min<long>(kmax, 3) && all_exact; ++k) {
            auto c = block_coefficient_exact(ws, s, N_period, k);
            if (!c) { all_exact = false; break; }
            RootRat cur = *c;
            for (long step = 0; step < N_period; ++step) {
                const long idx = k * N_period + s - step;   // current support index
                auto w = ws.exact_form(idx - 1);
                if (!w) { all_exact = false; break; }
                cur = cur * *w;
            }
            if (!all_exact) break;
            const RootRat target = (k == 1) ? RootRat(Rat(1), Rat(1))
                                            : *block_coefficient_exact(ws, s, N_period, k - 1);
            if (!(cur == target)) {
                all_exact = false;
                throw ConstructionError("exact periodicity violated at block " + std::to_string(k));
            }
        }
        res.exact = all_exact;
    }
    return res;
}

// Exact telescoping of the backward shift over one period applied to a single
// block vector: N applications of H_p send block k onto block k-1 with the
// coefficients matching exactly in (rational x sqrt(rational)) arithmetic.
struct TelescopeCheck {
    bool exact_available = false;
    bool holds = false;
    std::string lhs, rhs;
};

inline TelescopeCheck block_telescoping_check(const WeightSequence& ws, long s, long N_period,
                                              long k) {
    if (k < 1) throw PreconditionError("block index k >= 1");
    if (s < ws.p()) throw PreconditionError("block base must satisfy s >= p");
    TelescopeCheck out;
    auto start = block_coefficient_exact(ws, s, N_period, k);
    if (!start) return out;
    out.exact_available = true;
    RootRat cur = *start;
    for (long step = 0; step < N_period; ++step) {
        const long idx = k * N_period + s - step;
        auto w = ws.exact_form(idx - 1);
        if (!w) { out.exact_available = false; return out; }
        cur = cur * *w;
    }
    const RootRat target = (k == 1) ? RootRat(Rat(1), Rat(1))
                                    : *block_coefficient_exact(ws, s, N_period, k - 1);
    out.holds = (cur == target);
    out.lhs = cur.describe();
    out.rhs = target.describe();
    return out;
}

// ---------------------------------------------------------------------------
// Approximation of finitely supported vectors by shift-periodic points.
// ---------------------------------------------------------------------------

struct ApproxResult {
    VectorState psi;
    long N_used = 0;
    Real err_bound{0};      // certified ||phi - psi|| bound actually achieved
    Real smallness_max{0};  // max_s |a_s| prod_{j=p}^{s-1} omega_{j,p}
};

namespace detail {

// sum_{k>=1} c_{s,k}^2 with a geometric remainder after the computed blocks.
inline Real block_tail_sq(const WeightSequence& ws, long s, long Np) {
    Real total{0};
    Real c{1};
    const Real cut = pow(Real(10), -2 * static_cast<int>(working_digits()));
    for (long k = 1; k <= 64; ++k) {
        for (long j = (k - 1) * Np + s; j <= k * Np + s - 1; ++j) c /= ws.eval(j);
        total += c * c;
        const Real r = Real(1) / pow(ws.eval(k * Np + s), Np);
        if (r < 1) {
            const Real rem = c * c * r * r / (1 - r * r);
            if (rem < cut * (1 + total)) return total + rem;
            if (c * c < cut) return total + rem;
        }
    }
    // Weights grow in every admissible space; 64 blocks always reach the cut.
    throw TruncationError("block tail failed to converge");
}

} // namespace detail

inline ApproxResult approximate_by_periodic(const WeightSequence& ws,
                                            const std::vector<Cplx>& amplitudes,
                                            const Real& epsilon, long N_max = 4096) {
    if (amplitudes.empty()) throw PreconditionError("empty target vector");
    if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
    const long p = ws.p();
    const long M = p + static_cast<long>(amplitudes.size()) - 1;
    using std::abs;
    using std::sqrt;

    ApproxResult res;
    // Smallness condition: |a_s| prod_{j=p}^{s-1} omega_{j,p} must not exceed 1.
    {
        Real prod{1};
        for (long s = p; s <= M; ++s) {
            if (s > p) prod *= ws.eval(s - 1);
            const Real v = abs(amplitudes[static_cast<size_t>(s - p)]) * prod;
            if (v > res.smallness_max) res.smallness_max = v;
            if (v > 1)
                throw PreconditionError("amplitude at index " + std::to_string(s) +
                                        " violates the smallness condition (value " + v.str(6) +
                                        " > 1)");
        }
    }

    long N = std::max<long>({2, M, M - p + 1});
    std::optional<Real> err;
    for (; N <= N_max; ++N) {
        Real e2{0};
        for (long s = p; s <= M; ++s) {
            const Real a = abs(amplitudes[static_cast<size_t>(s - p)]);
            if (a == 0) continue;
            e2 += a * a * detail::block_tail_sq(ws, s, N);
        }
        if (sqrt(e2) <= epsilon) {
            err = sqrt(e2);
            break;
        }
    }
    if (!err) throw TruncationError("no period up to N_max meets the target accuracy");
    res.N_used = N;
    res.err_bound = *err;

    // Assemble psi = sum_s a_s phi_{s,N} on a truncation holding every block
    // above the precision cut.
    const Real cut = pow(Real(10), -static_cast<int>(working_digits()) - 10);
    long kmax = 1;
    for (long s = p; s <= M; ++s) {
        Real c{1};
        for (long k = 1; k <= 64; ++k) {
            for (long j = (k - 1) * N + s; j <= k * N + s - 1; ++j) c /= ws.eval(j);
            if (c < cut) { kmax = std::max(kmax, k); break; }
            kmax = std::max(kmax, k + 1);
        }
    }
    const long topi = kmax * N + M;
    res.psi.offset = p;
    res.psi.coeffs.assign(static_cast<size_t>(topi - p + 1), Cplx{});
    res.psi.trusted_lo = p;
    res.psi.trusted_hi = topi;
    Real dropped{0};
    for (long s = p; s <= M; ++s) {
        const Cplx a = amplitudes[static_cast<size_t>(s - p)];
        res.psi.slot(s) = res.psi.at(s) + a;
        Real c{1};
        for (long k = 1; k * N + s <= topi; ++k) {
            for (long j = (k - 1) * N + s; j <= k * N + s - 1; ++j) c /= ws.eval(j);
            res.psi.slot(k * N + s) = res.psi.at(k * N + s) + a * c;
            if (k * N + s + N > topi) {
                const Real r = Real(1) / pow(ws.eval(k * N + s), N);
                dropped += norm2(a) * c * c * ((r < 1) ? r * r / (1 - r * r) : Real(1));
            }
        }
    }
    res.psi.tail_bound = dropped;
    return res;
}

// ---------------------------------------------------------------------------
// Right-inverse decay trace: ||S^n P_k|| = 1/prod_{j=k}^{n+k-1} omega_{j,p}.
// ---------------------------------------------------------------------------

struct SDecayResult {
    std::vector<Real> norms;         // norms[n] = ||S^n P_k||, n = 0..steps
    bool nonincreasing = true;
    bool strict_once_growing = true; // strict decrease from the first index with omega > 1
    bool identity_exact = true;      // H_p(S P_j) == P_j bitwise for sampled j
};

inline SDecayResult s_operator_decay(const WeightSequence& ws, long k, long steps,
                                     long identity_samples = 20) {
    if (k < ws.p()) throw PreconditionError("start index must satisfy k >= p");
    if (steps < 1) throw PreconditionError("need at least one step");
    SDecayResult res;
    res.norms.reserve(static_cast<size_t>(steps) + 1);
    Real cur{1};
    res.norms.push_back(cur);
    bool growing = false;
    for (long n = 0; n < steps; ++n) {
        const Real w = ws.eval(k + n);
        if (w > 1) growing = true;
        const Real next = cur / w;
        if (next > cur) res.nonincreasing = false;
        if (growing && !(next < cur)) res.strict_once_growing = false;
        cur = next;
        res.norms.push_back(cur);
    }
    using std::abs;
    for (long j = ws.p(); j < ws.p() + identity_samples; ++j) {
        const Real w = ws.eval(j);
        // composite entry omega/omega cancels exactly; the two-step route
        // (divide for the right inverse, multiply back) carries one rounding
        if (w / w != 1) res.identity_exact = false;
        if (abs(w * (Real(1) / w) - 1) > ulps_of(Real(1), 2)) res.identity_exact = false;
    }
    return res;
}

} // namespace shiftlab

#endif
