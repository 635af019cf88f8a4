#include <catch2/catch_amalgamated.hpp>

#include <shiftlab/io.hpp>
#include <shiftlab/spaces.hpp>

using namespace shiftlab;

namespace {
struct QuadPrecision {
    QuadPrecision() { set_working_digits(kQuadratureDigits); }
} const quad_precision;
} // namespace

TEST_CASE("raw disk monomial norms match the closed form") {
    using std::abs;
    const Real nu("1.5");
    const auto rule = QuadratureRule::disk(nu, 28, QuadratureRule::DiskForm::Raw);
    for (long n = 0; n <= 8; ++n) {
        const auto ip = rule.inner_product(monomial(n), monomial(n));
        const Real closed = monomial_norm_disk(n, nu);
        INFO("n=" << n);
        REQUIRE(abs(ip.value.re - closed) / closed < Real("1e-10"));
        REQUIRE(abs(ip.value.im) < Real("1e-20"));
        REQUIRE(ip.quad_error < Real("1e-10"));
    }
    SECTION("constant function over the unnormalized measure at nu = 1") {
        const auto flat = QuadratureRule::disk(Real(1), 28, QuadratureRule::DiskForm::Raw);
        const auto ip = flat.inner_product(constant_one(), constant_one());
        REQUIRE(abs(ip.value.re - 2 * real_pi()) < Real("1e-12"));
    }
    SECTION("successive norms fall by (n+1)/(2 nu + n)") {
        for (long n = 0; n <= 6; ++n) {
            const Real ratio = monomial_norm_disk(n + 1, nu) / monomial_norm_disk(n, nu);
            REQUIRE(within_ulps(ratio, Real(n + 1) / (2 * nu + n), 8));
        }
    }
    REQUIRE_THROWS_AS(monomial_norm_disk(-1, nu), PreconditionError);
    REQUIRE_THROWS_AS(monomial_norm_disk(2, Real("0.4")), PreconditionError);
}

TEST_CASE("angular integration kills off-diagonal monomial products") {
    using std::abs;
    const auto rule = QuadratureRule::disk(Real("1.5"), 28);
    for (long n = 0; n <= 4; ++n)
        for (long m = 0; m <= 4; ++m) {
            if (n == m) continue;
            const auto ip = rule.inner_product(monomial(n), monomial(m));
            REQUIRE(abs(ip.value) < Real("1e-12"));
        }
}

TEST_CASE("normalized bases are orthonormal under their rules") {
    using std::abs;
    SECTION("disk basis") {
        const SpaceSpec spec = make_disk(PiRat(Rat(3, 2)), 0);
        const auto rule = QuadratureRule::for_space(spec, 28);
        for (long n = 0; n <= 6; ++n) {
            const auto Pn = basis_function(spec, n);
            const auto ip = rule.inner_product(Pn.integrand(), Pn.integrand());
            REQUIRE(abs(ip.value.re - 1) < Real("1e-10"));
        }
        const auto cross = rule.inner_product(basis_function(spec, 5).integrand(),
                                              basis_function(spec, 3).integrand());
        REQUIRE(abs(cross.value) < Real("1e-12"));
    }
    SECTION("plane basis") {
        const SpaceSpec spec = make_classic(0);
        const auto rule = QuadratureRule::for_space(spec, 28);
        const auto e5 = basis_function(spec, 5);
        const auto ip = rule.inner_product(e5.integrand(), e5.integrand());
        REQUIRE(abs(ip.value.re - 1) < Real("1e-10"));
        const auto cross =
            rule.inner_product(e5.integrand(), basis_function(spec, 3).integrand());
        REQUIRE(abs(cross.value) < Real("1e-12"));
    }
}

TEST_CASE("differentiation pairs with its adjoint on the disk") {
    const auto rule = QuadratureRule::disk(Real("1.5"), 28, QuadratureRule::DiskForm::Raw);
    for (long n = 0; n <= 4; ++n)
        for (long m = 0; m <= 4; ++m) {
            INFO("n=" << n << " m=" << m);
            REQUIRE(adjoint_residual_disk(n, m, Real("1.5"), rule) < Real("1e-10"));
        }
}

TEST_CASE("quadrature reproduces the declared disk weights") {
    const SpaceSpec spec = make_disk(PiRat(Rat(3, 2)), 0);
    const auto rule = QuadratureRule::for_space(spec, 28);
    for (long n = 0; n <= 5; ++n) {
        const auto out = disk_weight_consistency(n, spec, rule);
        INFO("n=" << n);
        REQUIRE(out.abs_diff < Real("1e-9"));
        REQUIRE(within_ulps(out.declared, sqrt(Real(n + 1) * (3 + Real(n))), 8));
    }
    REQUIRE_THROWS_AS(disk_weight_consistency(1, make_classic(0), rule), PreconditionError);
}

TEST_CASE("plane kernels sum to the exponential in the quadratic case") {
    using std::abs;
    using std::exp;
    const SpaceSpec spec = make_classic(0);
    const Cplx z{Real(1) / 2, Real(1) / 3};
    const Cplx w{Real(-1) / 4, Real(1) / 5};
    const auto res = kernel_eval(spec, z, w, 80);
    const Cplx closed = cexp(z * conj(w));
    REQUIRE(abs(res.value - closed) < Real("1e-12"));
    REQUIRE(res.tail_bound < Real("1e-20"));
    REQUIRE(kernel_eval(spec, Cplx{}, w, 10).value.re == 1);

    // gamma-ratio variant stays finite and self-consistent between truncations
    const SpaceSpec gen = make_generalized(PiRat(Rat(3)), 0);
    const auto k1 = kernel_eval(gen, z, w, 60);
    const auto k2 = kernel_eval(gen, z, w, 90);
    REQUIRE(abs(k1.value - k2.value) <= k1.tail_bound + k2.tail_bound);

    REQUIRE_THROWS_AS(kernel_eval(make_disk(PiRat(Rat(1)), 0), z, w, 40), PreconditionError);
    REQUIRE_THROWS_AS(kernel_eval(spec, z, w, 1), PreconditionError);
    REQUIRE_THROWS_AS(kernel_eval(spec, Cplx{Real(9)}, Cplx{Real(9)}, 5), TruncationError);
}

TEST_CASE("kernel evaluations reproduce basis values through the inner product") {
    const SpaceSpec spec = make_classic(0);
    const auto rule = QuadratureRule::for_space(spec, 24);
    const Cplx w{Real(1) / 2, Real(-1) / 4};
    for (long n : {0L, 2L, 4L})
        REQUIRE(reproducing_residual(spec, rule, n, w, 60) < Real("1e-6"));
}

TEST_CASE("lattice basis functions evaluate their Gaussian form") {
    using std::abs;
    using std::pow;
    const Real nu = 2 * real_pi();
    SECTION("value at the origin") {
        const Cplx v = BasisFunction::basis_eval_theta(0, Real(0), nu, Cplx{});
        REQUIRE(within_ulps(v.re, pow(2 * nu / real_pi(), Real(1) / 4), 8));
        REQUIRE(v.im == 0);
    }
    SECTION("offset alpha shifts the lattice index") {
        const Cplx with_alpha = BasisFunction::basis_eval_theta(2, Real(1) / 2, nu, Cplx{});
        const Cplx shifted = BasisFunction::basis_eval_theta(0, Real(5) / 2, nu, Cplx{});
        REQUIRE(abs(with_alpha - shifted) <= ulps_of(abs(shifted), 4));
    }
    SECTION("runaway exponents are refused") {
        REQUIRE_THROWS_AS(BasisFunction::basis_eval_theta(2000, Real(0), nu, Cplx{}),
                          RangeError);
    }
    const SpaceSpec spec = make_theta(pirat_from_string("2pi"), PiRat(Rat(0)), 0);
    REQUIRE_THROWS_AS(basis_function(spec, 0).scale(), PreconditionError);
    REQUIRE(basis_function(spec, 0).degree() == -1);
}

TEST_CASE("multiplication by the lattice character shifts the basis index") {
    using std::abs;
    using std::exp;
    const SpaceSpec spec = make_theta(pirat_from_string("2pi"), PiRat(Rat(0)), 0);
    const std::vector<Cplx> samples{Cplx{Real(0), Real(0)}, Cplx{Real(1) / 4, Real(0)},
                                    Cplx{Real(-1) / 3, Real(1) / 8}, Cplx{Real(1) / 2, Real(-1) / 5},
                                    Cplx{Real(1) / 10, Real(1) / 10}};
    const auto check = theta_multiplication_check(spec, 0, samples);
    REQUIRE(check.max_structure_dev < Real("1e-10"));
    REQUIRE(check.max_closed_dev < Real("1e-10"));
    REQUIRE(within_ulps(check.factor_closed, exp(real_pi() / 2), 8));
    REQUIRE(within_ulps(check.declared_omega, exp(Real(1) / 2), 8));
    REQUIRE(abs(check.declared_ratio - Real("2.9177")) < Real("1e-3"));
    REQUIRE_THROWS_AS(theta_multiplication_check(make_classic(0), 0, samples),
                      PreconditionError);
    REQUIRE_THROWS_AS(theta_multiplication_check(spec, 0, {Cplx{}}), PreconditionError);
}

TEST_CASE("coherent states carry the exponential norm") {
    const auto rule = QuadratureRule::plane(Real(2), 28);
    const auto out = coherent_norm_check(Cplx{Real(1)}, rule);
    REQUIRE(out.rel_error < Real("1e-8"));
    const auto rotated = coherent_norm_check(Cplx{Real(0), Real(1)}, rule);
    REQUIRE(rotated.rel_error < Real("1e-8"));
    REQUIRE(within_ulps(out.closed_form, rotated.closed_form, 4));
}

TEST_CASE("sample grids enumerate rows for export") {
    const auto rows = sample_grid([](const Cplx& z) { return z; }, Real(0), Real(1), 3, Real(-1),
                                  Real(1), 3);
    REQUIRE(rows.size() == 9);
    REQUIRE(rows.front().x == 0);
    REQUIRE(rows.front().y == -1);
    REQUIRE(rows.back().x == 1);
    REQUIRE(rows.back().y == 1);
    REQUIRE(rows.back().re == 1);  // f(z) = z
    const std::string csv = samples_csv(rows);
    REQUIRE(csv.rfind("x,y,re,im\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 10);
    REQUIRE_THROWS_AS(sample_grid([](const Cplx& z) { return z; }, Real(0), Real(1), 1, Real(0),
                                  Real(1), 3),
                      PreconditionError);
}

TEST_CASE("degree bookkeeping guards the quadrature order") {
    const auto rule = QuadratureRule::disk(Real("1.5"), 8);
    REQUIRE_THROWS_AS(rule.inner_product(monomial(5), monomial(5)), QuadratureError);
    REQUIRE_THROWS_AS(QuadratureRule::disk(Real("0.4"), 8), ConfigError);
    REQUIRE_THROWS_AS(QuadratureRule::plane(Real(0), 8), ConfigError);
    REQUIRE_THROWS_AS(QuadratureRule::strip(8), ConfigError);
    REQUIRE_THROWS_AS(
        QuadratureRule::for_space(make_theta(pirat_from_string("2pi"), PiRat(Rat(0)), 0), 8),
        ConfigError);
}
