#ifndef SHIFTLAB_SPACE_SPEC_HPP
#define SHIFTLAB_SPACE_SPEC_HPP

#include <string>

#include "errors.hpp"
#include "precision.hpp"
#include "rational.hpp"

namespace shiftlab {

enum class SpaceKind {
    ClassicBargmann,
    GeneralizedBargmann,
    ThetaFockBargmann,
    PoincareDisk,
};

inline std::string kind_to_string(SpaceKind k) {
    switch (k) {
        case SpaceKind::ClassicBargmann: return "classic_bargmann";
        case SpaceKind::GeneralizedBargmann: return "generalized_bargmann";
        case SpaceKind::ThetaFockBargmann: return "theta_fock_bargmann";
        case SpaceKind::PoincareDisk: return "poincare_disk";
    }
    throw ConfigError("unknown space kind");
}

inline SpaceKind kind_from_string(const std::string& s) {
    if (s == "classic_bargmann" || s == "classic") return SpaceKind::ClassicBargmann;
    if (s == "generalized_bargmann" || s == "generalized") return SpaceKind::GeneralizedBargmann;
    if (s == "theta_fock_bargmann" || s == "theta") return SpaceKind::ThetaFockBargmann;
    if (s == "poincare_disk" || s == "disk") return SpaceKind::PoincareDisk;
    throw ConfigError("unknown space kind: '" + s + "'");
}

// Single source of truth for a space and its shift order p. Parameters are
// exact (rational, possibly times pi) so derived constants do not drift.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::ClassicBargmann;
    PiRat beta{Rat(2)};   // GeneralizedBargmann only
    PiRat nu{Rat(1)};     // ThetaFockBargmann (nu > 0), PoincareDisk (nu >= 1)
    PiRat alpha{Rat(0)};  // ThetaFockBargmann only
    int p = 0;            // shift order

    void validate() const {
        if (p < 0) throw ConstructionError("shift order p must be >= 0, got " + std::to_string(p));
        switch (kind) {
            case SpaceKind::ClassicBargmann:
                break;
            case SpaceKind::GeneralizedBargmann:
                if (beta.to_real() <= 0)
                    throw ConstructionError("generalized Bargmann requires beta > 0, got " +
                                            pirat_to_string(beta));
                break;
            case SpaceKind::ThetaFockBargmann:
                if (nu.to_real() <= 0)
                    throw ConstructionError("theta space requires nu > 0, got " +
                                            pirat_to_string(nu));
                break;
            case SpaceKind::PoincareDisk:
                if (nu.to_real() < 1)
                    throw ConstructionError("Poincare disk space requires nu >= 1, got " +
                                            pirat_to_string(nu));
                break;
        }
    }

    // Geometric rate mu = 2*pi/nu of the theta weights; exact when nu is a
    // rational multiple of pi (e.g. nu = 2pi gives mu = 1).
    PiRat mu() const {
        if (kind != SpaceKind::ThetaFockBargmann)
            throw ConfigError("mu is defined for the theta space only");
        if (nu.r == Rat(0)) throw ConstructionError("nu must be nonzero");
        return nu.pi ? PiRat(Rat(2) / nu.r, false) : PiRat(Rat(2) / nu.r, true);
    }

    // Theta prefactor c_alpha = exp((mu + 4*alpha)/2).
    Real c_alpha() const {
        using std::exp;
        return exp((mu().to_real() + 4 * alpha.to_real()) / 2);
    }

    std::string describe() const {
        std::string s = kind_to_string(kind);
        switch (kind) {
            case SpaceKind::GeneralizedBargmann: s += " beta=" + pirat_to_string(beta); break;
            case SpaceKind::ThetaFockBargmann:
                s += " nu=" + pirat_to_string(nu) + " alpha=" + pirat_to_string(alpha);
                break;
            case SpaceKind::PoincareDisk: s += " nu=" + pirat_to_string(nu); break;
            default: break;
        }
        return s + " p=" + std::to_string(p);
    }
};

inline SpaceSpec make_classic(int p) {
    SpaceSpec s;
    s.kind = SpaceKind::ClassicBargmann;
    s.p = p;
    s.validate();
    return s;
}

inline SpaceSpec make_generalized(PiRat beta, int p) {
    SpaceSpec s;
    s.kind = SpaceKind::GeneralizedBargmann;
    s.beta = std::move(beta);
    s.p = p;
    s.validate();
    return s;
}

inline SpaceSpec make_theta(PiRat nu, PiRat alpha, int p) {
    SpaceSpec s;
    s.kind = SpaceKind::ThetaFockBargmann;
    s.nu = std::move(nu);
    s.alpha = std::move(alpha);
    s.p = p;
    s.validate();
    return s;
}

inline SpaceSpec make_disk(PiRat nu, int p) {
    SpaceSpec s;
    s.kind = SpaceKind::PoincareDisk;
    s.nu = std::move(nu);
    s.p = p;
    s.validate();
    return s;
}

} // namespace shiftlab

#endif
