#ifndef SHIFTLAB_SPACES_HPP
#define SHIFTLAB_SPACES_HPP

#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "quadrature.hpp"
#include "space_spec.hpp"
#include "weights.hpp"

namespace shiftlab {

// ---------------------------------------------------------------------------
// Orthonormal basis functions of the four spaces.
//   classic:      e_n(z) = z^n / sqrt(n!)
//   generalized:  e_n(z) = z^n / sqrt(Gamma(a(n+1))/Gamma(a)),  a = 2/beta
//   disk:         P_n(z) = sqrt((2 nu)_n / n!) z^n
//   theta:        e_n(z) = (2 nu/pi)^{1/4} e^{(nu/2) z^2}
//                          e^{-(pi^2/nu)(n+alpha)^2 + 2 i pi (n+alpha) z}
// ---------------------------------------------------------------------------

class BasisFunction {
  public:
    BasisFunction(SpaceSpec spec, long n) : spec_(std::move(spec)), n_(n) {
        if (n < 0) throw PreconditionError("basis index must be >= 0");
        spec_.validate();
    }

    long index() const { return n_; }
    const SpaceSpec& space() const { return spec_; }
    bool polynomial() const { return spec_.kind != SpaceKind::ThetaFockBargmann; }
    long degree() const { return polynomial() ? n_ : -1; }

    // Multiplier of z^n for the polynomial families.
    Real scale() const {
        using std::exp;
        switch (spec_.kind) {
            case SpaceKind::ClassicBargmann: return exp(-lgamma(Real(n_ + 1)) / 2);
            case SpaceKind::GeneralizedBargmann: {
                const Real a = 2 / spec_.beta.to_real();
                return exp(-(lgamma(a * Real(n_ + 1)) - lgamma(a)) / 2);
            }
            case SpaceKind::PoincareDisk: {
                const Real nu2 = 2 * spec_.nu.to_real();
                return exp((lgamma(nu2 + Real(n_)) - lgamma(nu2) - lgamma(Real(n_ + 1))) / 2);
            }
            case SpaceKind::ThetaFockBargmann:
                throw PreconditionError("theta basis is not a scaled monomial");
        }
        throw ConfigError("unknown space kind");
    }

    Cplx eval(const Cplx& z) const {
        if (spec_.kind == SpaceKind::ThetaFockBargmann)
            return basis_eval_theta(n_, spec_.alpha.to_real(), spec_.nu.to_real(), z);
        return scale() * cpow(z, n_);
    }

    Integrand integrand() const {
        if (spec_.kind == SpaceKind::ThetaFockBargmann) {
            const Real alpha = spec_.alpha.to_real();
            const Real nu = spec_.nu.to_real();
            const long n = n_;
            return {[n, alpha, nu](const Cplx& z) { return basis_eval_theta(n, alpha, nu, z); },
                    -1};
        }
        const Real c = scale();
        const long n = n_;
        return {[c, n](const Cplx& z) { return c * cpow(z, n); }, degree()};
    }

    // Lattice Gaussian on the strip; the quadratic exponent is guarded
    // against runaway magnitudes before exponentiation.
    static Cplx basis_eval_theta(long n, const Real& alpha, const Real& nu, const Cplx& z) {
        using std::exp;
        using std::pow;
        const Real pi = real_pi();
        const Real shift = Real(n) + alpha;
        const Cplx z2 = z * z;
        const Cplx expo = Cplx{(nu / 2) * z2.re - pi * pi / nu * shift * shift -
                                   2 * pi * shift * z.im,
                               (nu / 2) * z2.im + 2 * pi * shift * z.re};
        if (abs(expo.re) > Real(1000000))
            throw RangeError("theta basis exponent out of range at n = " + std::to_string(n));
        return pow(2 * nu / pi, Real(1) / 4) * cexp(expo);
    }

  private:
    SpaceSpec spec_;
    long n_;
};

inline BasisFunction basis_function(const SpaceSpec& spec, long n) {
    return BasisFunction(spec, n);
}

// ---------------------------------------------------------------------------
// Disk-space ground truth
// ---------------------------------------------------------------------------

// Closed form for the raw monomial norm: 2 pi/(2 nu - 1) * Gamma(2 nu) Gamma(n+1) / Gamma(2 nu + n).
inline Real monomial_norm_disk(long n, const Real& nu) {
    if (n < 0) throw PreconditionError("monomial degree must be >= 0");
    if (!(nu > Real(1) / 2)) throw PreconditionError("disk norm needs nu > 1/2");
    using std::exp;
    const Real nu2 = 2 * nu;
    return 2 * real_pi() / (nu2 - 1) *
           exp(lgamma(nu2) + lgamma(Real(n + 1)) - lgamma(nu2 + Real(n)));
}

// Residual of <A f, g> = <f, A* g> on monomials, A = d/dz, A* = z^2 d/dz + 2 nu z.
inline Real adjoint_residual_disk(long n, long m, const Real& nu, const QuadratureRule& rule) {
    if (n < 0 || m < 0) throw PreconditionError("degrees must be >= 0");
    using std::abs;
    // A z^n = n z^(n-1);  A* z^m = (m + 2 nu) z^(m+1)
    Integrand Af{[n](const Cplx& z) { return Real(n) * cpow(z, n - 1 < 0 ? 0 : n - 1); },
                 n > 0 ? n - 1 : 0};
    if (n == 0) Af = {[](const Cplx&) { return Cplx{}; }, 0};
    const Integrand Astar_g{[m, nu](const Cplx& z) { return (Real(m) + 2 * nu) * cpow(z, m + 1); },
                            m + 1};
    const Cplx lhs = rule.inner_product(Af, monomial(m)).value;
    const Cplx rhs = rule.inner_product(monomial(n), Astar_g).value;
    return abs(lhs - rhs);
}

// Quadrature route to the weight omega_n = sqrt((n+1)(2 nu + n)): <A* P_n, P_{n+1}>.
struct WeightConsistency {
    Real quadrature;
    Real declared;
    Real abs_diff;
};

inline WeightConsistency disk_weight_consistency(long n, const SpaceSpec& disk_spec,
                                                 const QuadratureRule& rule) {
    if (disk_spec.kind != SpaceKind::PoincareDisk)
        throw PreconditionError("weight consistency check is a disk-space oracle");
    using std::abs;
    const Real nu = disk_spec.nu.to_real();
    const BasisFunction Pn(disk_spec, n), Pn1(disk_spec, n + 1);
    const Real cn = Pn.scale();
    const Integrand Astar_Pn{
        [n, nu, cn](const Cplx& z) { return cn * (Real(n) + 2 * nu) * cpow(z, n + 1); }, n + 1};
    const Cplx qval = rule.inner_product(Astar_Pn, Pn1.integrand()).value;
    SpaceSpec base = disk_spec;
    base.p = 0;
    WeightConsistency out{qval.re, WeightSequence(base).eval(n), Real(0)};
    out.abs_diff = abs(Cplx{out.quadrature - out.declared, qval.im});
    return out;
}

// ---------------------------------------------------------------------------
// Reproducing kernels on the plane spaces: e(z, w) = sum z^n conj(w)^n / ||z^n||^2,
// with ||z^n||^2 = Gamma(a(n+1))/Gamma(a).
// ---------------------------------------------------------------------------

struct KernelResult {
    Cplx value;
    Real tail_bound{0};
    long terms_used = 0;
};

// steps[n] = Gamma(a n)/Gamma(a(n+1)) for n = 1..N_terms, so that
// term_n = term_{n-1} * x * steps[n]; steps[N_terms] drives the tail ratio.
inline std::vector<Real> kernel_steps(const SpaceSpec& spec, long N_terms) {
    if (spec.kind != SpaceKind::ClassicBargmann && spec.kind != SpaceKind::GeneralizedBargmann)
        throw PreconditionError("kernel evaluation covers the plane spaces");
    if (N_terms < 2) throw PreconditionError("kernel needs N_terms >= 2");
    using std::exp;
    const Real a = (spec.kind == SpaceKind::ClassicBargmann) ? Real(1) : 2 / spec.beta.to_real();
    std::vector<Real> steps(static_cast<std::size_t>(N_terms) + 1, Real(0));
    for (long n = 1; n <= N_terms; ++n)
        steps[static_cast<std::size_t>(n)] = exp(lgamma(a * Real(n)) - lgamma(a * Real(n + 1)));
    return steps;
}

inline KernelResult kernel_eval_with_steps(const std::vector<Real>& steps, const Cplx& z,
                                           const Cplx& w, long N_terms) {
    using std::abs;
    const Cplx x = z * conj(w);
    KernelResult res;
    Cplx term{Real(1)};
    Cplx acc{Real(1)};
    Real last_mag{1};
    for (long n = 1; n < N_terms; ++n) {
        term = term * x * steps[static_cast<std::size_t>(n)];
        acc = acc + term;
        last_mag = abs(term);
    }
    res.terms_used = N_terms;
    const Real ratio = abs(x) * steps[static_cast<std::size_t>(N_terms)];
    if (!(ratio < 1))
        throw TruncationError("kernel series not yet decaying at the truncation order");
    res.tail_bound = last_mag * ratio / (1 - ratio);
    res.value = acc;
    return res;
}

inline KernelResult kernel_eval(const SpaceSpec& spec, const Cplx& z, const Cplx& w,
                                long N_terms) {
    return kernel_eval_with_steps(kernel_steps(spec, N_terms), z, w, N_terms);
}

// | <phi, e_w> - phi(w) | for a basis function phi, via plane quadrature.
inline Real reproducing_residual(const SpaceSpec& spec, const QuadratureRule& rule,
                                 long basis_index, const Cplx& w, long N_terms) {
    using std::abs;
    const BasisFunction phi(spec, basis_index);
    const auto steps = kernel_steps(spec, N_terms);
    const Integrand kernel_fn{[steps, w, N_terms](const Cplx& z) {
                                  return kernel_eval_with_steps(steps, z, w, N_terms).value;
                              },
                              -1};
    const Cplx lhs = rule.inner_product(phi.integrand(), kernel_fn).value;
    return abs(lhs - phi.eval(w));
}

// ---------------------------------------------------------------------------
// Theta multiplication structure: with M(z) = e^{2 i pi z},
// M e_n = e^{(pi^2/nu)(2(n+alpha)+1)} e_{n+1} pointwise (exact function identity).
// The factor is compared against the sequence the weight table declares.
// ---------------------------------------------------------------------------

struct ThetaMultCheck {
    Real factor_closed;      // e^{(pi^2/nu)(2(n+alpha)+1)}
    Real declared_omega;     // WeightSequence base weight at n
    Real max_structure_dev;  // variation of the measured ratio across samples
    Real max_closed_dev;     // relative gap between measured ratio and factor_closed
    Real declared_ratio;     // factor_closed / declared_omega (1 iff conventions agree)
};

inline ThetaMultCheck theta_multiplication_check(const SpaceSpec& spec, long n,
                                                 const std::vector<Cplx>& samples) {
    if (spec.kind != SpaceKind::ThetaFockBargmann)
        throw PreconditionError("multiplication check is theta-space only");
    if (samples.size() < 2) throw PreconditionError("need at least 2 sample points");
    using std::abs;
    using std::exp;
    const Real nu = spec.nu.to_real();
    const Real alpha = spec.alpha.to_real();
    const Real pi = real_pi();
    ThetaMultCheck out;
    out.factor_closed = exp(pi * pi / nu * (2 * (Real(n) + alpha) + 1));
    SpaceSpec base = spec;
    base.p = 0;
    out.declared_omega = WeightSequence(base).eval(n);
    out.declared_ratio = out.factor_closed / out.declared_omega;

    std::vector<Cplx> ratios;
    for (const auto& z : samples) {
        const Cplx en = BasisFunction::basis_eval_theta(n, alpha, nu, z);
        const Cplx en1 = BasisFunction::basis_eval_theta(n + 1, alpha, nu, z);
        const Cplx mz = cexp(Cplx{-2 * pi * z.im, 2 * pi * z.re});  // e^{2 i pi z}
        ratios.push_back((mz * en) / en1);
    }
    Real sdev{0}, cdev{0};
    for (const auto& r : ratios) {
        sdev = std::max(sdev, abs(r - ratios.front()) / abs(ratios.front()));
        cdev = std::max(cdev, abs(r - out.factor_closed) / out.factor_closed);
    }
    out.max_structure_dev = sdev;
    out.max_closed_dev = cdev;
    return out;
}

// ---------------------------------------------------------------------------
// Coherent-state norm on the classic space: ||e^{lambda z}||^2 = e^{|lambda|^2}.
// ---------------------------------------------------------------------------

struct CoherentNormCheck {
    Real quadrature;
    Real closed_form;
    Real rel_error;
};

inline CoherentNormCheck coherent_norm_check(const Cplx& lambda, const QuadratureRule& rule) {
    using std::abs;
    using std::exp;
    const Integrand f{[lambda](const Cplx& z) { return cexp(lambda * z); }, -1};
    const auto ip = rule.inner_product(f, f);
    CoherentNormCheck out{ip.value.re, exp(norm2(lambda)), Real(0)};
    out.rel_error = abs(out.quadrature - out.closed_form) / out.closed_form;
    return out;
}

// Grid samples of a function for CSV export.
struct FunctionSample {
    Real x, y, re, im;
};

inline std::vector<FunctionSample> sample_grid(const std::function<Cplx(const Cplx&)>& fn,
                                               const Real& x0, const Real& x1, long nx,
                                               const Real& y0, const Real& y1, long ny) {
    if (nx < 2 || ny < 2) throw PreconditionError("sample grid needs at least 2x2 points");
    std::vector<FunctionSample> rows;
    rows.reserve(static_cast<size_t>(nx * ny));
    for (long i = 0; i < nx; ++i)
        for (long j = 0; j < ny; ++j) {
            const Real x = x0 + (x1 - x0) * Real(i) / Real(nx - 1);
            const Real y = y0 + (y1 - y0) * Real(j) / Real(ny - 1);
            const Cplx v = fn(Cplx{x, y});
            rows.push_back({x, y, v.re, v.im});
        }
    return rows;
}

} // namespace shiftlab

#endif
