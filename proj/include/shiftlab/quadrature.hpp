#ifndef SHIFTLAB_QUADRATURE_HPP
#define SHIFTLAB_QUADRATURE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "space_spec.hpp"

namespace shiftlab {

struct Integrand {
    std::function<Cplx(const Cplx&)> fn;
    long degree = -1;  // polynomial degree; -1 = transcendental/unknown
};

inline Integrand monomial(long n) {
    if (n < 0) throw PreconditionError("monomial degree must be >= 0");
    return {[n](const Cplx& z) { return cpow(z, n); }, n};
}

inline Integrand constant_one() {
    return {[](const Cplx&) { return Cplx{Real(1)}; }, 0};
}

struct IPResult {
    Cplx value;
    Real quad_error{0};  // nested-grid error estimate (fine vs half-density rule)
    Real tail_bound{0};  // plane-cutoff estimate; 0 on the disk
};

// Product rule: trapezoid in the angle (exact for harmonics below the node
// count) x tanh-sinh in the radial parameter.
//
//   disk:  z = sqrt(t) e^{i theta}, t in [0,1], weight (1-t)^(2 nu - 2);
//          Raw form integrates dtheta dt as-is, Normalized multiplies by
//          (2 nu - 1)/(2 pi), which makes P_n = sqrt((2nu)_n/n!) z^n orthonormal
//          (equivalently (2 nu - 1)/pi against Lebesgue area measure).
//   plane: s = r^beta on [0, S], weight c (a/2) s^(a-1) e^{-s} with a = 2/beta
//          and c = beta/(2 pi Gamma(2/beta)); beta = 2 reduces to the Gaussian
//          measure e^{-|z|^2}/pi under which z^n/sqrt(n!) is orthonormal.
class QuadratureRule {
  public:
    enum class Domain { Plane, Disk, Strip };
    enum class DiskForm { Raw, Normalized };

    static QuadratureRule disk(const Real& nu, long order, DiskForm form = DiskForm::Normalized,
                               unsigned digits = kQuadratureDigits) {
        if (!(nu > Real(1) / 2)) throw ConfigError("disk quadrature needs nu > 1/2");
        QuadratureRule q;
        q.domain_ = Domain::Disk;
        q.nu_ = nu;
        q.form_ = form;
        q.finish(order, digits);
        return q;
    }

    static QuadratureRule plane(const Real& beta, long order,
                                unsigned digits = kQuadratureDigits,
                                std::optional<Real> cutoff_S = std::nullopt) {
        if (!(beta > 0)) throw ConfigError("plane quadrature needs beta > 0");
        QuadratureRule q;
        q.domain_ = Domain::Plane;
        q.beta_ = beta;
        // cutoff where e^{-s} has spent the working digits, plus polynomial headroom
        q.cutoff_S_ = cutoff_S.value_or(Real(digits + 15) * log(Real(10)) + Real(2 * order + 16));
        q.finish(order, digits);
        return q;
    }

    static QuadratureRule strip(long, unsigned = kQuadratureDigits) {
        throw ConfigError(
            "strip quadrature is not implemented: theta-space inner products are certified "
            "algebraically, not numerically");
    }

    static QuadratureRule for_space(const SpaceSpec& spec, long order,
                                    unsigned digits = kQuadratureDigits) {
        switch (spec.kind) {
            case SpaceKind::ClassicBargmann: return plane(Real(2), order, digits);
            case SpaceKind::GeneralizedBargmann:
                return plane(spec.beta.to_real(), order, digits);
            case SpaceKind::PoincareDisk: return disk(spec.nu.to_real(), order,
                                                      DiskForm::Normalized, digits);
            case SpaceKind::ThetaFockBargmann: return strip(order, digits);
        }
        throw ConfigError("unknown space kind");
    }

    Domain domain() const { return domain_; }
    long order() const { return order_; }
    long angular_nodes() const { return angular_; }
    unsigned digits() const { return digits_; }
    const Real& cutoff() const { return cutoff_S_; }

    std::string describe() const {
        switch (domain_) {
            case Domain::Disk:
                return "disk(nu=" + nu_.str(6) + ", " +
                       (form_ == DiskForm::Raw ? "raw" : "normalized") + ", order " +
                       std::to_string(order_) + ")";
            case Domain::Plane:
                return "plane(beta=" + beta_.str(6) + ", S=" + cutoff_S_.str(6) + ", order " +
                       std::to_string(order_) + ")";
            case Domain::Strip: return "strip";
        }
        return "?";
    }

    long radial_nodes() const { return static_cast<long>(nodes_.size()); }

    IPResult inner_product(const Integrand& f, const Integrand& g) const {
        if (f.degree >= 0 && g.degree >= 0 && f.degree + g.degree > order_)
            throw QuadratureError("combined degree " + std::to_string(f.degree + g.degree) +
                                  " exceeds rule order " + std::to_string(order_));
        PrecisionGuard guard(digits_ + 10);
        using std::pow;
        using std::sqrt;
        const Real two_pi = 2 * real_pi();
        // known polynomial degrees cap the angular frequencies |deg f - deg g|
        // can reach, so smaller angle counts stay alias-free
        const long M = (f.degree >= 0 && g.degree >= 0)
                           ? std::max<long>({f.degree + 2, g.degree + 2, 8})
                           : angular_;

        // angle average x radial weight at one radial node
        auto slice = [&](const RadialNode& nd) -> Cplx {
            const Real r = (domain_ == Domain::Disk) ? sqrt(nd.t) : pow(cutoff_S_ * nd.t, 1 / beta_);
            Cplx acc{};
            for (long j = 0; j < M; ++j) {
                const Cplx z = r * unit_root(j, M);
                acc = acc + f.fn(z) * conj(g.fn(z));
            }
            return acc * (two_pi / Real(M)) * radial_weight(nd.t, nd.tc);
        };

        Cplx fine{}, half{};
        for (const auto& nd : nodes_) {
            const Cplx contrib = slice(nd) * nd.weight;
            fine = fine + contrib;
            if (nd.on_half_grid) half = half + contrib * Real(2);
        }

        IPResult out;
        out.value = Cplx{to_working(fine.re), to_working(fine.im)};
        out.quad_error = to_working(abs(fine - half));
        if (domain_ == Domain::Plane) {
            // integrand beyond the cutoff is dominated by e^{-s/2} once
            // S > 2 (order + a); one slice at the edge scales the remainder
            RadialNode edge;
            edge.t = 1 - Real(1) / 1000;
            edge.tc = Real(1) / 1000;
            out.tail_bound = to_working(4 * abs(slice(edge)));
        }
        return out;
    }

  private:
    struct RadialNode {
        Real t;             // node in (0,1)
        Real tc;            // exact complement 1 - t (t near 1 loses digits otherwise)
        Real weight{0};
        bool on_half_grid = false;  // belongs to the step-2h subrule (error estimate)
    };

    // weight of the radial measure at t, complement passed separately so the
    // disk factor (1-t)^(2nu-2) keeps full precision near t = 1
    Real radial_weight(const Real& t, const Real& tc) const {
        using std::exp;
        using std::pow;
        const Real two_pi = 2 * real_pi();
        if (domain_ == Domain::Disk) {
            Real w = pow(tc, 2 * nu_ - 2);
            if (form_ == DiskForm::Normalized) w *= (2 * nu_ - 1) / two_pi;
            return w;
        }
        const Real s = cutoff_S_ * t;
        const Real a = 2 / beta_;
        const Real c = beta_ / (two_pi * exp(lgamma(a)));
        return c * (a / 2) * pow(s, a - 1) * exp(-s) * cutoff_S_;
    }

    void finish(long order, unsigned digits) {
        if (order < 0) throw ConfigError("rule order must be >= 0");
        order_ = order;
        digits_ = digits;
        angular_ = std::max<long>(2 * order + 8, 64);

        // tanh-sinh node table on (0,1): t = (1 + tanh((pi/2) sinh(jh)))/2.
        // Closed-form nodes and weights; accuracy roughly doubles per level.
        PrecisionGuard guard(digits + 10);
        using std::cosh;
        using std::exp;
        using std::pow;
        using std::sinh;
        const int level = (digits <= 35) ? 6 : (digits <= 70 ? 7 : 8);
        const Real h = pow(Real(2), -level);
        const Real floor = pow(Real(10), -2 * static_cast<int>(digits) - 20);
        const Real half_pi = real_pi() / 2;

        nodes_.clear();
        RadialNode center;
        center.t = Real(1) / 2;
        center.tc = Real(1) / 2;
        center.weight = h * half_pi / 2;
        center.on_half_grid = true;
        nodes_.push_back(center);
        for (long j = 1;; ++j) {
            const Real jh = j * h;
            const Real u = half_pi * sinh(jh);
            const Real comp = 1 / (1 + exp(2 * u));  // 1 - t for the upper node
            const Real w = h * half_pi / 2 * cosh(jh) / (cosh(u) * cosh(u));
            if (comp < floor || w < floor) break;
            RadialNode upper;
            upper.t = 1 - comp;
            upper.tc = comp;
            upper.weight = w;
            upper.on_half_grid = (j % 2 == 0);
            RadialNode lower;
            lower.t = comp;
            lower.tc = upper.t;
            lower.weight = w;
            lower.on_half_grid = upper.on_half_grid;
            nodes_.push_back(lower);
            nodes_.push_back(upper);
        }
    }

    Domain domain_ = Domain::Disk;
    DiskForm form_ = DiskForm::Normalized;
    Real nu_{1};
    Real beta_{2};
    Real cutoff_S_{0};
    long order_ = 0;
    long angular_ = 64;
    unsigned digits_ = kQuadratureDigits;
    std::vector<RadialNode> nodes_;
};

} // namespace shiftlab

#endif
