#include <catch2/catch_amalgamated.hpp>

#include <shiftlab/io.hpp>
#include <shiftlab/recurrence.hpp>

using namespace shiftlab;

namespace {
struct Precision50 {
    Precision50() { set_working_digits(50); }
} const precision50;

WeightSequence theta_weights(int p) {
    return WeightSequence(make_theta(pirat_from_string("2pi"), PiRat(Rat(0)), p));
}
} // namespace

TEST_CASE("reciprocal summability certifies by growth class") {
    SECTION("square-root weights of order one converge with margin 1/2") {
        const auto c = check_hyp1(WeightSequence(make_classic(1)), 1000);
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(c.certified_all_n);
        REQUIRE(c.margin == Real(1) / 2);
        REQUIRE(c.details.count("tail_bound") == 1);
    }
    SECTION("order zero grows too slowly and fails") {
        const auto c = check_hyp1(WeightSequence(make_classic(0)), 1000);
        REQUIRE(c.verdict == Verdict::Fail);
        REQUIRE(c.margin == Real(-1) / 2);
    }
    SECTION("disk weights of order zero sit on the divergence line") {
        const auto c = check_hyp1(WeightSequence(make_disk(PiRat(Rat(3, 2)), 0)), 1000);
        REQUIRE(c.verdict == Verdict::Fail);
    }
    SECTION("lattice exponential weights pass with a geometric tail") {
        const auto c = check_hyp1(theta_weights(0), 100);
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(c.certified_all_n);
        REQUIRE(within_ulps(c.margin, Real(1), 4));  // decay rate mu = 1
    }
    SECTION("probe exponent overrides the classified one") {
        const auto c = check_hyp1(WeightSequence(make_classic(1)), 100, Real("1.2"));
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(within_ulps(c.margin, Real("0.2"), 4));
    }
    REQUIRE_THROWS_AS(check_hyp1(WeightSequence(make_classic(1)), 5), PreconditionError);
}

TEST_CASE("log-concavity holds exactly for surd-valued weights") {
    using std::abs;
    const auto c = check_hyp2(WeightSequence(make_classic(1)), 2, 1000);
    REQUIRE(c.verdict == Verdict::Pass);
    REQUIRE(c.exact_arithmetic);
    // Margin shrinks like 3/(2 n^2); the minimum sits at the top of the range.
    const Real pinned("1.499e-6");
    REQUIRE(abs(c.margin - pinned) / pinned < Real("0.01"));
    REQUIRE(c.witnesses.back().n == 1000);
}

TEST_CASE("log-concavity is an exact equality for geometric weights") {
    const auto c = check_hyp2(theta_weights(0), 1, 100);
    REQUIRE(c.verdict == Verdict::Pass);
    REQUIRE(c.exact_arithmetic);
    REQUIRE(c.certified_all_n);
    REQUIRE(c.margin == 0);
}

TEST_CASE("log-concavity covers disk and gamma-ratio families") {
    SECTION("disk weights with rational parameter use the exact route") {
        const auto c = check_hyp2(WeightSequence(make_disk(PiRat(Rat(3, 2)), 1)), 2, 200);
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(c.exact_arithmetic);
    }
    SECTION("gamma-ratio weights fall back to guarded floating comparison") {
        const auto c = check_hyp2(WeightSequence(make_generalized(PiRat(Rat(3)), 1)), 2, 200);
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE_FALSE(c.exact_arithmetic);
        bool noted = false;
        for (const auto& n : c.notes) noted = noted || n.find("floating") != std::string::npos;
        REQUIRE(noted);
    }
    REQUIRE_THROWS_AS(check_hyp2(WeightSequence(make_classic(2)), 1, 10), PreconditionError);
}

TEST_CASE("dominated decay locks at the expected thresholds") {
    const auto gamma = GammaSeq::sqrt_n_log_n();
    struct Case {
        int p;
        Real lambda_abs;
        long n0;
    };
    for (const auto& tc : {Case{1, Real(1), 127}, Case{1, Real(2), 228}, Case{2, Real(1), 5},
                           Case{2, Real(2), 6}}) {
        const WeightSequence ws(make_classic(tc.p));
        const auto c = check_hyp3(ws, gamma, tc.lambda_abs, 3, 1000);
        INFO("p=" << tc.p << " |lambda|=" << tc.lambda_abs.str(4));
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(c.threshold_n0.value() == tc.n0);
        REQUIRE(c.margin > 0);
    }
}

TEST_CASE("dominated decay margin matches the frozen anchor") {
    using std::abs;
    const auto c = check_hyp3(WeightSequence(make_classic(1)), GammaSeq::sqrt_n_log_n(), Real(1),
                              3, 1000);
    const Real pinned("1.5025e-6");
    REQUIRE(abs(c.margin - pinned) / pinned < Real("0.01"));
}

TEST_CASE("geometric damping admits a closed-form threshold") {
    using std::abs;
    using std::exp;
    const WeightSequence ws = theta_weights(0);
    const auto gamma = GammaSeq::geometric_for(ws, Rat(3));
    const auto t = geometric_damping_threshold(ws, Rat(3), Real(2));
    // m_b = 2 e^{5/6}, C_b = e^{-1/3}: ln(m_b/(1-C_b)) ~ 2.79, so lock at 3
    REQUIRE(t.n0 == 3);
    REQUIRE(within_ulps(t.m_b, 2 * exp(Real(5) / 6), 8));
    REQUIRE(within_ulps(t.C_b, exp(Real(-1) / 3), 8));
    REQUIRE(geometric_damping_threshold(ws, Rat(3), Real(1) / 2).n0 == 2);

    SECTION("scan values equal the two-parameter model exactly") {
        const WeightFn w = [&ws](long k) { return ws.recurrence_weight(k); };
        for (long n = 2; n <= 40; ++n) {
            const Real scanned = damping_lhs(w, gamma, Real(2), n);
            const Real modeled = t.m_b * exp(-t.x * Real(n)) + t.C_b;
            REQUIRE(abs(scanned - modeled) <= ulps_of(modeled, 16));
        }
    }
    SECTION("full certificate passes and extends to all n") {
        const auto c = check_hyp3(ws, gamma, Real(2), 3, 500);
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(c.certified_all_n);
        REQUIRE(c.details.at("closed_form_threshold") == "3");
        REQUIRE(c.details.count("m_b") == 1);
        REQUIRE(c.details.count("C_b") == 1);
    }
    REQUIRE_THROWS_AS(geometric_damping_threshold(WeightSequence(make_classic(1)), Rat(3),
                                                  Real(2)),
                      ConfigError);
    REQUIRE_THROWS_AS(geometric_damping_threshold(ws, Rat(2), Real(2)), ConfigError);
}

TEST_CASE("tabulated dominating sequences leave summability undecided") {
    std::vector<Real> table;
    using std::log;
    using std::sqrt;
    for (long n = 1; n <= 201; ++n) table.push_back(sqrt(Real(n)) * log(Real(n)));
    const auto c = check_hyp3(WeightSequence(make_classic(1)), GammaSeq::tabulated(table),
                              Real(1), 3, 200);
    REQUIRE(c.verdict == Verdict::Inconclusive);
    bool noted = false;
    for (const auto& n : c.notes) noted = noted || n.find("not decidable") != std::string::npos;
    REQUIRE(noted);
}

TEST_CASE("dominated decay fails outright when growth is absent") {
    // Constant-ish gamma kills the growth condition: omega_n gamma_n/gamma_{n+1}
    // stays near omega_n, but the certificate probes n^(1+alpha) against a
    // table that grows too slowly to matter; use order zero where omega ~ n^(1/2).
    const auto c = check_hyp3(WeightSequence(make_classic(0)), GammaSeq::sqrt_n_log_n(), Real(1),
                              3, 500);
    REQUIRE(c.verdict == Verdict::Fail);
    bool noted = false;
    for (const auto& n : c.notes) noted = noted || n.find("growth") != std::string::npos;
    REQUIRE(noted);
}

TEST_CASE("strict damping certifies without the growth condition") {
    SECTION("square-root weights of order one") {
        const auto c = check_alt_strict(WeightSequence(make_classic(1)), GammaSeq::sqrt_n_log_n(),
                                        Real(1), 3, 1000);
        REQUIRE(c.verdict == Verdict::Pass);
        REQUIRE(c.threshold_n0.value() == 127);
        REQUIRE(c.margin > 0);
    }
    SECTION("long range with no lock fails") {
        const auto c = check_alt_strict(WeightSequence(make_classic(1)), GammaSeq::sqrt_n_log_n(),
                                        Real(10), 3, 300);
        REQUIRE(c.verdict == Verdict::Fail);
    }
    SECTION("short range with no lock stays inconclusive") {
        const auto c = check_alt_strict(WeightSequence(make_classic(1)), GammaSeq::sqrt_n_log_n(),
                                        Real(10), 3, 80);
        REQUIRE(c.verdict == Verdict::Inconclusive);
    }
    SECTION("tabulated gamma reaches the lock but not summability") {
        std::vector<Real> table;
        using std::log;
        using std::sqrt;
        for (long n = 1; n <= 301; ++n) table.push_back(sqrt(Real(n)) * log(Real(n)));
        const auto c = check_alt_strict(WeightSequence(make_classic(1)),
                                        GammaSeq::tabulated(table), Real(1), 3, 300);
        REQUIRE(c.verdict == Verdict::Inconclusive);
        bool noted = false;
        for (const auto& n : c.notes)
            noted = noted || n.find("summability") != std::string::npos;
        REQUIRE(noted);
    }
}

TEST_CASE("certificates serialize with schema, verdict, and witnesses") {
    const auto c = check_hyp2(WeightSequence(make_classic(1)), 2, 100);
    const ojson j = certificate_json(c);
    REQUIRE(j["schema"] == "shiftlab.certificate/1");
    const auto& body = j["certificate"];
    REQUIRE(body["hypothesis"] == "log_concavity");
    REQUIRE(body["verdict"] == "pass");
    REQUIRE(body["exact_arithmetic"] == true);
    REQUIRE(body["range"]["lo"] == 2);
    REQUIRE(body["range"]["hi"] == 100);
    REQUIRE(body["witnesses"].is_array());
    REQUIRE_FALSE(body["witnesses"].empty());
    REQUIRE(body["space"]["kind"] == "classic_bargmann");
    REQUIRE(j["meta"].count("timestamp") == 0);  // deterministic by default
    const ojson stamped = certificate_json(c, std::string("2026-01-01T00:00:00Z"));
    REQUIRE(stamped["meta"]["timestamp"] == "2026-01-01T00:00:00Z");
}

TEST_CASE("hypothesis names round-trip") {
    for (const auto h : {Hypothesis::ReciprocalSummability, Hypothesis::LogConcavity,
                         Hypothesis::DominatedDecay, Hypothesis::StrictDamping})
        REQUIRE(hypothesis_from_string(hypothesis_to_string(h)) == h);
    REQUIRE(hypothesis_from_string("hyp1") == Hypothesis::ReciprocalSummability);
    REQUIRE(hypothesis_from_string("alt") == Hypothesis::StrictDamping);
    REQUIRE_THROWS_AS(hypothesis_from_string("hyp9"), ConfigError);
}
