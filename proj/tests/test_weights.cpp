#include <catch2/catch_amalgamated.hpp>

#include <shiftlab/space_spec.hpp>
#include <shiftlab/weights.hpp>

using namespace shiftlab;

namespace {
struct Precision50 {
    Precision50() { set_working_digits(50); }
} const precision50;
} // namespace

TEST_CASE("space constructors validate parameters") {
    REQUIRE_NOTHROW(make_classic(0));
    REQUIRE_NOTHROW(make_disk(PiRat(Rat(1)), 0));
    REQUIRE_THROWS_AS(make_disk(PiRat(Rat(9, 10)), 0), ConstructionError);
    REQUIRE_THROWS_AS(make_generalized(PiRat(Rat(0)), 0), ConstructionError);
    SpaceSpec bad = make_classic(0);
    bad.p = -1;
    REQUIRE_THROWS_AS(bad.validate(), ConstructionError);
}

TEST_CASE("space kinds round-trip through names") {
    for (const auto kind : {SpaceKind::ClassicBargmann, SpaceKind::GeneralizedBargmann,
                            SpaceKind::ThetaFockBargmann, SpaceKind::PoincareDisk})
        REQUIRE(kind_from_string(kind_to_string(kind)) == kind);
    REQUIRE(kind_from_string("classic") == SpaceKind::ClassicBargmann);
    REQUIRE(kind_from_string("disk") == SpaceKind::PoincareDisk);
    REQUIRE_THROWS_AS(kind_from_string("nope"), ConfigError);
}

TEST_CASE("base weights match their closed forms on small indices") {
    using std::abs;
    using std::exp;
    using std::sqrt;
    SECTION("square-root family") {
        const WeightSequence ws(make_classic(0));
        for (long n = 0; n <= 20; ++n)
            REQUIRE(within_ulps(ws.eval(n), sqrt(Real(n + 1)), 2));
    }
    SECTION("gamma-ratio family at beta = 1") {
        // m_n = (2n+1)(2n): m_3 = 42, so the base weight at n = 2 is sqrt(42)
        const WeightSequence ws(make_generalized(PiRat(Rat(1)), 0));
        REQUIRE(within_ulps(ws.eval(2) * ws.eval(2), Real(42), 4));
        REQUIRE(within_ulps(ws.eval(0) * ws.eval(0), Real(6), 4));  // m_1 = 6
    }
    SECTION("lattice exponential family") {
        // nu = 2 pi gives mu = 1 and constant e^{1/2}
        const WeightSequence ws(make_theta(pirat_from_string("2pi"), PiRat(Rat(0)), 0));
        REQUIRE(within_ulps(ws.eval(0), exp(Real(1) / 2), 2));
        for (long n = 0; n <= 8; ++n)
            REQUIRE(within_ulps(ws.eval(n + 1) / ws.eval(n), exp(Real(1)), 4));
    }
    SECTION("disk family") {
        const WeightSequence ws(make_disk(PiRat(Rat(3, 2)), 0));
        REQUIRE(within_ulps(ws.eval(0), sqrt(Real(3)), 2));
        REQUIRE(within_ulps(ws.eval(1), sqrt(Real(8)), 2));
    }
}

TEST_CASE("indices below the shift order act as zero") {
    const WeightSequence ws(make_classic(2));
    REQUIRE(ws.p() == 2);
    REQUIRE(ws.zero_action(0));
    REQUIRE(ws.zero_action(1));
    REQUIRE_FALSE(ws.zero_action(2));
    REQUIRE_THROWS_AS(ws.eval(1), PreconditionError);
    REQUIRE(ws.query(0).zero_action);
    REQUIRE(ws.query(0).value == 0);
    REQUIRE(ws.eval(2) > 0);
}

TEST_CASE("composed weights agree with the product rule") {
    using std::abs;
    // omega_{n,1} = omega_n * omega_{n-1}^2: for the square-root family this is
    // sqrt(n+1) * n, an exact surd
    const WeightSequence ws(make_classic(1));
    for (long n = 1; n <= 30; ++n) {
        const auto exact = ws.exact_form(n);
        REQUIRE(exact.has_value());
        REQUIRE(*exact == RootRat(Rat(n), Rat(n + 1)));
        REQUIRE(within_ulps(ws.eval(n), composed_weight(ws, n), 4));
    }
    const WeightSequence ws2(make_classic(2));
    for (long n = 2; n <= 30; ++n)
        REQUIRE(within_ulps(ws2.eval(n), composed_weight(ws2, n), 4));
}

TEST_CASE("recurrence indexing shifts by the composition order") {
    const WeightSequence ws(make_classic(2));
    using std::sqrt;
    // omega'_1 = omega_{2,2} = omega_2 omega_1^2 omega_0^2 = 2 sqrt(3)
    REQUIRE(within_ulps(ws.recurrence_weight(1), 2 * sqrt(Real(3)), 4));
    REQUIRE(within_ulps(ws.recurrence_weight(5), ws.eval(6), 1));
}

TEST_CASE("gamma-ratio moments match the dual lgamma evaluation") {
    using std::abs;
    for (int beta : {1, 2, 3, 4}) {
        const auto checked = gamma_ratio_checked(100, Real(beta));
        REQUIRE(checked.rel_error_bound < Real("1e-45"));
        REQUIRE(checked.value > 0);
    }
    // beta = 2 collapses to m_n = n exactly
    for (long n : {1L, 10L, 100L, 1000L})
        REQUIRE(within_ulps(gamma_ratio(n, Real(2)), Real(n), 2));
}

TEST_CASE("moment growth approaches the power model monotonically") {
    using std::abs;
    for (const double beta : {1.0, 3.0, 4.0}) {
        const Real b(beta);
        Real prev{-1};
        for (long n : {100L, 1000L, 10000L}) {
            const Real dev = m_model_deviation(n, b);
            REQUIRE(dev >= 0);
            if (prev >= 0) REQUIRE(dev < prev);
            prev = dev;
        }
        REQUIRE(prev <= Real("1e-3"));
    }
}

TEST_CASE("exponent-two moments equal the square-root family") {
    using std::abs;
    const WeightSequence gen(make_generalized(PiRat(Rat(2)), 1));
    const WeightSequence cls(make_classic(1));
    for (long n = 1; n <= 200; ++n) {
        const Real rel = abs(gen.eval(n) - cls.eval(n)) / cls.eval(n);
        REQUIRE(rel < Real("1e-12"));
    }
}

TEST_CASE("asymptotic classes describe the growth kind") {
    REQUIRE_FALSE(WeightSequence(make_classic(0)).asympt_class().exponential);
    REQUIRE(WeightSequence(make_theta(pirat_from_string("2pi"), PiRat(Rat(0)), 0))
                .asympt_class()
                .exponential);
    const auto disk = WeightSequence(make_disk(PiRat(Rat(3, 2)), 0)).asympt_class();
    REQUIRE_FALSE(disk.exponential);
    REQUIRE(disk.exponent == 1);
    REQUIRE(disk.reciprocal_summable() == false);  // sum 1/n diverges
    const auto disk_p1 = WeightSequence(make_disk(PiRat(Rat(3, 2)), 1)).asympt_class();
    REQUIRE(disk_p1.reciprocal_summable() == true);
}

TEST_CASE("asymptotic report tracks the model ratio across probes") {
    using std::abs;
    const WeightSequence ws(make_classic(0));
    const auto rep = asymptotic_check(ws, {100, 1000, 10000});
    REQUIRE(rep.rows.size() == 3);
    REQUIRE_FALSE(rep.divergent);
    REQUIRE(rep.monotone_approach);
    for (const auto& row : rep.rows) REQUIRE(abs(row.ratio - 1) < Real("1e-2"));
    REQUIRE_THROWS_AS(asymptotic_check(ws, {1000, 100}), PreconditionError);
}
