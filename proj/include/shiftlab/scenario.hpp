#ifndef SHIFTLAB_SCENARIO_HPP
#define SHIFTLAB_SCENARIO_HPP

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "recurrence.hpp"
#include "spaces.hpp"
#include "weights.hpp"

namespace shiftlab {

inline Verdict worst_of(Verdict a, Verdict b) {
    const auto rank = [](Verdict v) {
        switch (v) {
            case Verdict::Fail: return 2;
            case Verdict::Inconclusive: return 1;
            case Verdict::Pass: return 0;
        }
        return 2;
    };
    return rank(a) >= rank(b) ? a : b;
}

inline int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Inconclusive: return 2;
        case Verdict::Fail: return 1;
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Scenario description
// ---------------------------------------------------------------------------

struct Scenario {
    std::string name = "scenario";
    SpaceSpec space;
    std::string task;
    unsigned precision = 0;  // 0 = keep ambient default
    std::string out_dir = "out";
    bool timestamp = false;

    std::vector<Cplx> lambdas;
    long N = 100;
    long n_lo = -1, n_hi = -1;
    std::string gamma = "sqrt_n_log_n";
    Rat beta_prime{3};
    std::vector<std::string> hypotheses;
    long steps = 10;
    std::string op_kind = "jacobi_sum";
    long basis_index = -1;  // orbit start: P_k, or -1 for an eigenvector start
    std::vector<RootOfUnity> roots;
    std::vector<Cplx> amplitudes;
    std::string epsilon = "1e-2";
    long s = 0, N_period = 2, N_trunc = 64;
    long quad_order = 28;
    long quad_n_max = 8;
    std::vector<long> probes;
    std::map<std::string, std::string> tolerances;

    Real tolerance(const std::string& key, const char* fallback) const {
        const auto it = tolerances.find(key);
        return Real(it != tolerances.end() ? it->second.c_str() : fallback);
    }
};

// ---------------------------------------------------------------------------
// Parsing (decimal strings throughout; parse errors name the field)
// ---------------------------------------------------------------------------

namespace detail {

inline Real parse_real_field(const ojson& j, const std::string& field) {
    try {
        if (j.is_string()) return Real(j.get<std::string>());
        if (j.is_number_integer()) return Real(j.get<long>());
        throw ConfigError("expected a decimal string");
    } catch (const std::exception& e) {
        throw ConfigError("field '" + field + "': " + e.what());
    }
}

inline Cplx parse_cplx_field(const ojson& j, const std::string& field) {
    if (j.is_object()) {
        Cplx z;
        if (j.contains("re")) z.re = parse_real_field(j.at("re"), field + ".re");
        if (j.contains("im")) z.im = parse_real_field(j.at("im"), field + ".im");
        return z;
    }
    return Cplx{parse_real_field(j, field)};
}

template <typename T>
inline T get_or(const ojson& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
}

} // namespace detail

inline SpaceSpec space_from_json(const ojson& j) {
    if (!j.contains("kind")) throw ConfigError("space: missing field 'kind'");
    SpaceSpec spec;
    try {
        spec.kind = kind_from_string(j.at("kind").get<std::string>());
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("space.kind: ") + e.what());
    }
    const auto pirat_field = [&](const char* key, PiRat fallback) {
        if (!j.contains(key)) return fallback;
        const auto& v = j.at(key);
        try {
            if (v.is_string()) return pirat_from_string(v.get<std::string>());
            if (v.is_number_integer()) return PiRat(v.get<long>());
            throw ConfigError("expected string or integer");
        } catch (const std::exception& e) {
            throw ConfigError(std::string("space.") + key + ": " + e.what());
        }
    };
    spec.beta = pirat_field("beta", PiRat(Rat(2)));
    spec.nu = pirat_field("nu", PiRat(Rat(1)));
    spec.alpha = pirat_field("alpha", PiRat(Rat(0)));
    spec.p = detail::get_or<int>(j, "p", 0);
    spec.validate();
    return spec;
}

inline Scenario scenario_from_json(const ojson& j) {
    Scenario sc;
    sc.name = detail::get_or<std::string>(j, "name", "scenario");
    if (!j.contains("space")) throw ConfigError("scenario: missing field 'space'");
    sc.space = space_from_json(j.at("space"));
    if (!j.contains("task")) throw ConfigError("scenario: missing field 'task'");
    sc.task = j.at("task").get<std::string>();
    static const std::vector<std::string> kTasks = {
        "weights",  "certify",     "recurrence",  "eigensum",    "orbit",
        "periodic_sum", "periodic_hp", "approximate", "quadrature", "asymptotics"};
    if (std::find(kTasks.begin(), kTasks.end(), sc.task) == kTasks.end())
        throw ConfigError("unknown task: '" + sc.task + "'");
    sc.precision = detail::get_or<unsigned>(j, "precision", 0);
    sc.out_dir = detail::get_or<std::string>(j, "out_dir", "out");
    sc.timestamp = detail::get_or<bool>(j, "timestamp", false);

    const ojson params = j.contains("params") ? j.at("params") : ojson::object();
    if (params.contains("lambda")) {
        const auto& l = params.at("lambda");
        if (l.is_array())
            for (size_t i = 0; i < l.size(); ++i)
                sc.lambdas.push_back(
                    detail::parse_cplx_field(l[i], "lambda[" + std::to_string(i) + "]"));
        else
            sc.lambdas.push_back(detail::parse_cplx_field(l, "lambda"));
    }
    sc.N = detail::get_or<long>(params, "N", sc.N);
    sc.n_lo = detail::get_or<long>(params, "n_lo", sc.n_lo);
    sc.n_hi = detail::get_or<long>(params, "n_hi", sc.n_hi);
    sc.gamma = detail::get_or<std::string>(params, "gamma", sc.gamma);
    if (params.contains("beta_prime"))
        sc.beta_prime = rat_from_string(params.at("beta_prime").get<std::string>());
    if (params.contains("hypotheses"))
        sc.hypotheses = params.at("hypotheses").get<std::vector<std::string>>();
    sc.steps = detail::get_or<long>(params, "steps", sc.steps);
    sc.op_kind = detail::get_or<std::string>(params, "operator", sc.op_kind);
    sc.basis_index = detail::get_or<long>(params, "basis_index", sc.basis_index);
    if (params.contains("roots")) {
        for (const auto& r : params.at("roots")) {
            RootOfUnity root;
            root.num = r.at("num").get<long>();
            root.den = r.at("den").get<long>();
            sc.roots.push_back(root);
        }
    }
    if (params.contains("amplitudes")) {
        const auto& a = params.at("amplitudes");
        for (size_t i = 0; i < a.size(); ++i)
            sc.amplitudes.push_back(
                detail::parse_cplx_field(a[i], "amplitudes[" + std::to_string(i) + "]"));
    }
    sc.epsilon = detail::get_or<std::string>(params, "epsilon", sc.epsilon);
    sc.s = detail::get_or<long>(params, "s", sc.s);
    sc.N_period = detail::get_or<long>(params, "N_period", sc.N_period);
    sc.N_trunc = detail::get_or<long>(params, "N_trunc", sc.N_trunc);
    sc.quad_order = detail::get_or<long>(params, "quad_order", sc.quad_order);
    sc.quad_n_max = detail::get_or<long>(params, "quad_n_max", sc.quad_n_max);
    if (params.contains("probes")) sc.probes = params.at("probes").get<std::vector<long>>();
    if (j.contains("tolerances"))
        for (const auto& [k, v] : j.at("tolerances").items())
            sc.tolerances[k] = v.get<std::string>();
    return sc;
}

inline ojson scenario_resolved_json(const Scenario& sc) {
    ojson j;
    j["name"] = sc.name;
    j["space"] = space_json(sc.space);
    j["task"] = sc.task;
    j["precision"] = working_digits();
    ojson params;
    if (!sc.lambdas.empty()) {
        ojson l = ojson::array();
        for (const auto& z : sc.lambdas) l.push_back(cplx_json(z));
        params["lambda"] = l;
    }
    params["N"] = sc.N;
    if (sc.n_lo >= 0) params["n_lo"] = sc.n_lo;
    if (sc.n_hi >= 0) params["n_hi"] = sc.n_hi;
    params["gamma"] = sc.gamma;
    params["beta_prime"] = rat_to_string(sc.beta_prime);
    if (!sc.hypotheses.empty()) params["hypotheses"] = sc.hypotheses;
    j["params"] = params;
    if (!sc.tolerances.empty()) {
        ojson t;
        for (const auto& [k, v] : sc.tolerances) t[k] = v;
        j["tolerances"] = t;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct ScenarioOutcome {
    Verdict verdict = Verdict::Pass;
    ojson summary;
    std::vector<std::string> files;
};

namespace detail {

struct Artifacts {
    std::string dir;
    std::vector<std::string> files;
    ojson rows = ojson::array();  // report rows: {space,p,item,verdict,margin}

    std::string path(const std::string& leaf) const { return dir + "/" + leaf; }

    void add_json(const std::string& leaf, const ojson& j) {
        write_json_file(path(leaf), j);
        files.push_back(leaf);
    }
    void add_text(const std::string& leaf, const std::string& content) {
        write_text_file(path(leaf), content);
        files.push_back(leaf);
    }
    void add_row(const SpaceSpec& spec, const std::string& item, Verdict v, const Real& margin) {
        rows.push_back(ojson{{"space", kind_to_string(spec.kind)},
                             {"p", spec.p},
                             {"item", item},
                             {"verdict", verdict_to_string(v)},
                             {"margin", real_str(margin)}});
    }
};

inline GammaSeq gamma_for(const Scenario& sc, const WeightSequence& ws) {
    return GammaSeq::from_name(sc.gamma, ws, sc.beta_prime);
}

inline std::string lambda_tag(const Cplx& z, size_t i) {
    (void)z;
    return "lambda" + std::to_string(i);
}

// task: weights — table, composition consistency, asymptotic class
inline Verdict run_weights(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    const long hi = (sc.n_hi >= 0) ? sc.n_hi : std::max<long>(sc.N, ws.p() + 16);
    art.add_text("weights.csv", weights_csv(ws, 0, hi));
    using std::abs;
    Real worst{0};
    long step = std::max<long>(1, hi / 64);
    for (long n = ws.p(); n <= hi; n += step) {
        const Real direct = ws.eval(n);
        const Real composed = composed_weight(ws, n);
        const Real rel = abs(direct - composed) / direct;
        if (rel > worst) worst = rel;
    }
    const Real tol = sc.tolerance("composition_ulp", "10") * unit_roundoff();
    const Verdict v = (worst <= tol) ? Verdict::Pass : Verdict::Fail;
    ojson j;
    j["schema"] = "shiftlab.weights/1";
    j["space"] = space_json(sc.space);
    j["range_hi"] = hi;
    j["composition_max_rel_dev"] = real_str(worst);
    j["asymptotic_class"] = ws.asympt_class().describe();
    j["verdict"] = verdict_to_string(v);
    j["meta"] = meta_json();
    art.add_json("weights.json", j);
    art.add_row(sc.space, "weights/composition", v, worst);
    return v;
}

// task: certify — hypothesis certificates over the lambda grid
inline Verdict run_certify(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    std::vector<std::string> hyps = sc.hypotheses;
    if (hyps.empty())
        hyps = {"reciprocal_summability", "log_concavity", "dominated_decay"};
    std::vector<Cplx> lambdas = sc.lambdas;
    if (lambdas.empty()) lambdas.push_back(Cplx{Real(1)});
    const long n_hi = (sc.n_hi >= 0) ? sc.n_hi : 1000;
    Verdict worst = Verdict::Pass;
    using std::abs;
    for (const auto& hname : hyps) {
        const Hypothesis h = hypothesis_from_string(hname);
        if (h == Hypothesis::ReciprocalSummability) {
            const Certificate c = check_hyp1(ws, n_hi);
            art.add_json("cert_" + hypothesis_to_string(h) + ".json",
                         certificate_json(c));
            art.add_row(sc.space, hypothesis_to_string(h), c.verdict, c.margin);
            worst = worst_of(worst, c.verdict);
        } else if (h == Hypothesis::LogConcavity) {
            const long lo = (sc.n_lo >= 0) ? std::max<long>(sc.n_lo, ws.p() + 1) : ws.p() + 1;
            const Certificate c = check_hyp2(ws, lo, n_hi);
            art.add_json("cert_" + hypothesis_to_string(h) + ".json",
                         certificate_json(c));
            art.add_row(sc.space, hypothesis_to_string(h), c.verdict, c.margin);
            worst = worst_of(worst, c.verdict);
        } else {
            const GammaSeq gamma = gamma_for(sc, ws);
            for (size_t i = 0; i < lambdas.size(); ++i) {
                const Real la = abs(lambdas[i]);
                const long lo = (sc.n_lo >= 0) ? std::max<long>(sc.n_lo, 3) : 3;
                const Certificate c =
                    (h == Hypothesis::DominatedDecay)
                        ? check_hyp3(ws, gamma, la, lo, n_hi)
                        : check_alt_strict(ws, gamma, la, lo, n_hi);
                art.add_json("cert_" + hypothesis_to_string(h) + "_" + lambda_tag(lambdas[i], i) +
                                 ".json",
                             certificate_json(c));
                art.add_row(sc.space, hypothesis_to_string(h) + "|" + lambda_tag(lambdas[i], i),
                            c.verdict, c.margin);
                worst = worst_of(worst, c.verdict);
            }
        }
    }
    return worst;
}

// task: recurrence — solve and trace
inline Verdict run_recurrence_task(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    std::vector<Cplx> lambdas = sc.lambdas;
    if (lambdas.empty()) lambdas.push_back(Cplx{Real(1)});
    Verdict worst = Verdict::Pass;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        const auto sol = solve_recurrence(ws, lambdas[i], sc.N);
        art.add_text("recurrence_" + lambda_tag(lambdas[i], i) + ".csv", recurrence_csv(sol));
        const Real resid = recurrence_residual(sol, [&ws](long k) { return ws.recurrence_weight(k); });
        const Real tol = sc.tolerance("interior_ulp", "10") * unit_roundoff();
        const Verdict v = (resid <= tol) ? Verdict::Pass : Verdict::Fail;
        ojson j;
        j["schema"] = "shiftlab.recurrence/1";
        j["space"] = space_json(sc.space);
        j["lambda"] = cplx_json(lambdas[i]);
        j["N"] = sc.N;
        j["norm"] = real_str(sol.norm());
        j["interior_residual"] = real_str(resid);
        j["rerun_agreement"] = real_str(sol.agreement);
        j["verdict"] = verdict_to_string(v);
        j["meta"] = meta_json();
        art.add_json("recurrence_" + lambda_tag(lambdas[i], i) + ".json", j);
        art.add_row(sc.space, "recurrence|" + lambda_tag(lambdas[i], i), v, resid);
        worst = worst_of(worst, v);
    }
    return worst;
}

// task: eigensum — recurrence eigenvector with certification
inline Verdict run_eigensum(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    const GammaSeq gamma = gamma_for(sc, ws);
    std::vector<Cplx> lambdas = sc.lambdas;
    if (lambdas.empty()) lambdas.push_back(Cplx{Real(1)});
    Verdict worst = Verdict::Pass;
    using std::abs;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        const auto res = eigenvector_sum(ws, lambdas[i], sc.N, gamma);
        art.add_text("eigensum_" + lambda_tag(lambdas[i], i) + ".csv", recurrence_csv(res.sol));
        const Real resid = recurrence_residual(res.sol,
                                               [&ws](long k) { return ws.recurrence_weight(k); });
        const Real tol = sc.tolerance("interior_ulp", "10") * unit_roundoff();
        Verdict v = (resid <= tol) ? Verdict::Pass : Verdict::Fail;
        if (v == Verdict::Pass && !res.l2.locked) v = Verdict::Inconclusive;
        ojson j;
        j["schema"] = "shiftlab.eigensum/1";
        j["space"] = space_json(sc.space);
        j["lambda"] = cplx_json(lambdas[i]);
        j["N"] = sc.N;
        j["interior_residual"] = real_str(resid);
        j["last_residual"] = cplx_json(res.last_residual);
        j["last_residual_abs"] = real_str(abs(res.last_residual));
        if (res.residual_bound) j["residual_bound"] = real_str(*res.residual_bound);
        j["l2"] = l2_report_json(res.l2);
        j["warnings"] = res.warnings;
        j["verdict"] = verdict_to_string(v);
        j["meta"] = meta_json();
        art.add_json("eigensum_" + lambda_tag(lambdas[i], i) + ".json", j);
        art.add_row(sc.space, "eigensum|" + lambda_tag(lambdas[i], i), v, resid);
        worst = worst_of(worst, v);
    }
    return worst;
}

// task: orbit — iterate a start vector under a truncated operator
inline Verdict run_orbit(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    const OpKind kind = op_kind_from_string(sc.op_kind);
    const TruncatedOperator op = build_operator(kind, ws, sc.N);
    VectorState start;
    std::optional<Cplx> lam;
    if (sc.basis_index >= 0) {
        start = VectorState::basis(sc.basis_index, op.offset(), op.dim());
    } else {
        const Cplx lambda = sc.lambdas.empty() ? Cplx{Real(1)} : sc.lambdas.front();
        lam = lambda;
        if (kind == OpKind::BackwardShift) {
            start = eigenvector_Hp(ws, lambda, sc.N);
        } else {
            start = eigenvector_sum(ws, lambda, sc.N).state;
        }
    }
    const auto trace = orbit(op, start, sc.steps, lam);
    art.add_text("orbit.csv", orbit_csv(trace));
    ojson j;
    j["schema"] = "shiftlab.orbit/1";
    j["space"] = space_json(sc.space);
    j["operator"] = op_kind_to_string(kind);
    j["steps"] = sc.steps;
    j["final_window"] = ojson{{"lo", trace.rows.back().window_lo},
                              {"hi", trace.rows.back().window_hi}};
    j["final_norm"] = real_str(trace.rows.back().norm);
    j["meta"] = meta_json();
    art.add_json("orbit.json", j);
    art.add_row(sc.space, "orbit", Verdict::Pass, Real(0));
    return Verdict::Pass;
}

// task: periodic_sum — root-of-unity combination, period defect + tails
inline Verdict run_periodic_sum(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    const GammaSeq gamma = gamma_for(sc, ws);
    std::vector<RootOfUnity> roots = sc.roots;
    if (roots.empty()) roots.push_back({1, 2});
    std::vector<Cplx> amps = sc.amplitudes;
    if (amps.empty()) amps.assign(roots.size(), Cplx{Real(1)});
    const auto res = periodic_point_sum(ws, roots, amps, sc.N, gamma);
    const Real tol = sc.tolerance("window_defect", "1e-8");
    Verdict v = (res.window_defect <= tol) ? Verdict::Pass : Verdict::Fail;
    if (v == Verdict::Pass && !res.tail_bound) v = Verdict::Inconclusive;
    ojson j;
    j["schema"] = "shiftlab.periodic_sum/1";
    j["space"] = space_json(sc.space);
    j["period"] = res.period_l;
    j["N"] = sc.N;
    j["window"] = ojson{{"lo", res.window_lo}, {"hi", res.window_hi}};
    j["window_defect"] = real_str(res.window_defect);
    if (res.tail_bound) j["tail_bound"] = real_str(*res.tail_bound);
    ojson reports = ojson::array();
    for (const auto& r : res.per_root) reports.push_back(l2_report_json(r));
    j["per_root_l2"] = reports;
    j["warnings"] = res.warnings;
    j["verdict"] = verdict_to_string(v);
    j["meta"] = meta_json();
    art.add_json("periodic_sum.json", j);
    art.add_row(sc.space, "periodic_sum", v, res.window_defect);
    return v;
}

// task: periodic_hp — block periodic point of the pure shift
inline Verdict run_periodic_hp(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    const long s = std::max<long>(sc.s, ws.p());
    const auto res = periodic_point_Hp(ws, s, sc.N_period, sc.N_trunc);
    const Real tol = sc.tolerance("periodic_dev", "1e-25");
    const Verdict v = (res.exact || res.max_deviation <= tol) ? Verdict::Pass : Verdict::Fail;
    ojson j;
    j["schema"] = "shiftlab.periodic_hp/1";
    j["space"] = space_json(sc.space);
    j["s"] = res.s;
    j["period"] = res.period;
    j["blocks"] = res.blocks;
    j["exact"] = res.exact;
    j["max_deviation"] = real_str(res.max_deviation);
    j["window"] = ojson{{"lo", res.window_lo}, {"hi", res.window_hi}};
    j["verdict"] = verdict_to_string(v);
    j["meta"] = meta_json();
    art.add_json("periodic_hp.json", j);
    art.add_row(sc.space, "periodic_hp", v, res.max_deviation);
    return v;
}

// task: approximate — periodic approximation of a finitely supported vector
inline Verdict run_approximate(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    std::vector<Cplx> amps = sc.amplitudes;
    if (amps.empty()) amps = {Cplx{Real(1)}, Cplx{Real(1) / 10}};
    const Real eps(sc.epsilon.c_str());
    const auto res = approximate_by_periodic(ws, amps, eps);
    const Verdict v = (res.err_bound <= eps) ? Verdict::Pass : Verdict::Fail;
    ojson j;
    j["schema"] = "shiftlab.approximate/1";
    j["space"] = space_json(sc.space);
    j["epsilon"] = sc.epsilon;
    j["N_used"] = res.N_used;
    j["err_bound"] = real_str(res.err_bound);
    j["smallness_max"] = real_str(res.smallness_max);
    j["psi_dim"] = static_cast<long>(res.psi.coeffs.size());
    j["verdict"] = verdict_to_string(v);
    j["meta"] = meta_json();
    art.add_json("approximate.json", j);
    art.add_row(sc.space, "approximate", v, res.err_bound);
    return v;
}

// task: quadrature — function-space ground truth for the space
inline Verdict run_quadrature(const Scenario& sc, Artifacts& art) {
    using std::abs;
    Verdict worst = Verdict::Pass;
    ojson j;
    j["schema"] = "shiftlab.quadrature/1";
    j["space"] = space_json(sc.space);
    if (sc.space.kind == SpaceKind::PoincareDisk) {
        const Real nu = sc.space.nu.to_real();
        const QuadratureRule raw = QuadratureRule::disk(nu, sc.quad_order,
                                                        QuadratureRule::DiskForm::Raw);
        const QuadratureRule norm = QuadratureRule::disk(nu, sc.quad_order);
        const Real tol_norms = sc.tolerance("monomial_norms", "1e-10");
        Real worst_norm_dev{0};
        for (long n = 0; n <= sc.quad_n_max; ++n) {
            const Real q = raw.inner_product(monomial(n), monomial(n)).value.re;
            const Real closed = monomial_norm_disk(n, nu);
            worst_norm_dev = std::max(worst_norm_dev, abs(q - closed) / closed);
        }
        j["monomial_norm_max_rel_dev"] = real_str(worst_norm_dev);
        if (worst_norm_dev > tol_norms) worst = Verdict::Fail;

        const Real tol_adj = sc.tolerance("adjoint_residual", "1e-10");
        Real worst_adj{0};
        for (long n = 0; n <= std::min<long>(sc.quad_n_max, 8); ++n)
            for (long m = 0; m <= std::min<long>(sc.quad_n_max, 8); ++m)
                worst_adj = std::max(worst_adj, adjoint_residual_disk(n, m, nu, norm));
        j["adjoint_max_residual"] = real_str(worst_adj);
        if (worst_adj > tol_adj) worst = Verdict::Fail;

        const Real tol_w = sc.tolerance("weight_consistency", "1e-9");
        Real worst_w{0};
        for (long n = 0; n <= std::min<long>(sc.quad_n_max, 8); ++n) {
            const auto wc = disk_weight_consistency(n, sc.space, norm);
            worst_w = std::max(worst_w, wc.abs_diff);
        }
        j["weight_consistency_max_diff"] = real_str(worst_w);
        if (worst_w > tol_w) worst = Verdict::Fail;
        art.add_row(sc.space, "quadrature/disk", worst, worst_norm_dev);
    } else if (sc.space.kind == SpaceKind::ClassicBargmann ||
               sc.space.kind == SpaceKind::GeneralizedBargmann) {
        const QuadratureRule rule = QuadratureRule::for_space(sc.space, sc.quad_order);
        const Real tol_on = sc.tolerance("orthonormality", "1e-10");
        Real worst_on{0};
        for (long n = 0; n <= sc.quad_n_max; ++n) {
            const BasisFunction en(sc.space, n);
            const Real q = rule.inner_product(en.integrand(), en.integrand()).value.re;
            worst_on = std::max(worst_on, abs(q - 1));
        }
        j["orthonormality_max_dev"] = real_str(worst_on);
        if (worst_on > tol_on) worst = Verdict::Fail;
        if (sc.space.kind == SpaceKind::ClassicBargmann) {
            const Cplx lambda = sc.lambdas.empty() ? Cplx{Real(1)} : sc.lambdas.front();
            const auto cn = coherent_norm_check(lambda, rule);
            j["coherent_norm_rel_error"] = real_str(cn.rel_error);
            if (cn.rel_error > sc.tolerance("coherent_norm", "1e-8")) worst = Verdict::Fail;
        }
        art.add_row(sc.space, "quadrature/plane", worst, worst_on);
    } else {
        // theta: multiplication structure report (no strip quadrature)
        const std::vector<Cplx> samples = {Cplx{Real(3) / 10, Real(1) / 10},
                                           Cplx{Real(-1) / 5, Real(1) / 4},
                                           Cplx{Real(1) / 2, Real(0)},
                                           Cplx{Real(0), Real(1) / 3},
                                           Cplx{Real(-2) / 5, Real(-1) / 10}};
        const auto mc = theta_multiplication_check(sc.space, std::max<long>(0, sc.n_lo), samples);
        j["mult_factor_closed"] = real_str(mc.factor_closed);
        j["mult_declared_omega"] = real_str(mc.declared_omega);
        j["mult_structure_dev"] = real_str(mc.max_structure_dev);
        j["mult_closed_dev"] = real_str(mc.max_closed_dev);
        j["mult_declared_ratio"] = real_str(mc.declared_ratio);
        if (mc.max_structure_dev > sc.tolerance("mult_structure", "1e-10") ||
            mc.max_closed_dev > sc.tolerance("mult_structure", "1e-10"))
            worst = Verdict::Fail;
        art.add_row(sc.space, "quadrature/theta_mult", worst, mc.max_structure_dev);
    }
    j["verdict"] = verdict_to_string(worst);
    j["meta"] = meta_json();
    art.add_json("quadrature.json", j);
    return worst;
}

// task: asymptotics — growth-class report over probe indices
inline Verdict run_asymptotics(const Scenario& sc, Artifacts& art) {
    const WeightSequence ws(sc.space);
    std::vector<long> probes = sc.probes;
    if (probes.empty()) probes = {100, 1000, 10000};
    const auto rep = asymptotic_check(ws, probes);
    ojson j;
    j["schema"] = "shiftlab.asymptotics/1";
    j["space"] = space_json(sc.space);
    j["class"] = rep.cls.describe();
    ojson rows = ojson::array();
    for (const auto& r : rep.rows)
        rows.push_back(ojson{{"n", r.n},
                             {"value", real_str(r.value)},
                             {"model", real_str(r.model)},
                             {"ratio", real_str(r.ratio)}});
    j["rows"] = rows;
    j["monotone_approach"] = rep.monotone_approach;
    j["divergent"] = rep.divergent;
    if (!rep.note.empty()) j["note"] = rep.note;
    j["verdict"] = verdict_to_string(Verdict::Pass);
    j["meta"] = meta_json();
    art.add_json("asymptotics.json", j);
    art.add_row(sc.space, "asymptotics", Verdict::Pass, Real(0));
    return Verdict::Pass;
}

} // namespace detail

inline ScenarioOutcome run_scenario(const Scenario& sc) {
    struct DigitsOverride {
        unsigned prev;
        bool active;
        explicit DigitsOverride(unsigned d) : prev(working_digits()), active(d > 0) {
            if (active) set_working_digits(d);
        }
        ~DigitsOverride() {
            if (active) set_working_digits(prev);
        }
    } digits(sc.precision);

    detail::Artifacts art;
    art.dir = sc.out_dir;
    Verdict v = Verdict::Pass;
    if (sc.task == "weights") v = detail::run_weights(sc, art);
    else if (sc.task == "certify") v = detail::run_certify(sc, art);
    else if (sc.task == "recurrence") v = detail::run_recurrence_task(sc, art);
    else if (sc.task == "eigensum") v = detail::run_eigensum(sc, art);
    else if (sc.task == "orbit") v = detail::run_orbit(sc, art);
    else if (sc.task == "periodic_sum") v = detail::run_periodic_sum(sc, art);
    else if (sc.task == "periodic_hp") v = detail::run_periodic_hp(sc, art);
    else if (sc.task == "approximate") v = detail::run_approximate(sc, art);
    else if (sc.task == "quadrature") v = detail::run_quadrature(sc, art);
    else if (sc.task == "asymptotics") v = detail::run_asymptotics(sc, art);
    else throw ConfigError("unknown task: '" + sc.task + "'");

    ScenarioOutcome out;
    out.verdict = v;
    ojson s;
    s["schema"] = "shiftlab.summary/1";
    s["name"] = sc.name;
    s["verdict"] = verdict_to_string(v);
    s["config"] = scenario_resolved_json(sc);
    s["rows"] = art.rows;
    s["files"] = art.files;
    std::optional<std::string> ts;
    if (sc.timestamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        ts = std::string(buf);
    }
    s["meta"] = meta_json(ts);
    write_json_file(art.dir + "/summary.json", s);
    out.files = art.files;
    out.files.push_back("summary.json");
    out.summary = s;
    return out;
}

// ---------------------------------------------------------------------------
// Reporting across scenario outputs
// ---------------------------------------------------------------------------

struct ReportBundle {
    Verdict verdict = Verdict::Pass;
    std::string csv;
    std::string text;
    long rows = 0;
};

inline ReportBundle report_bundle(const std::vector<std::string>& summary_paths) {
    ReportBundle rep;
    rep.csv = "space,p,item,verdict,margin\n";
    std::string version;
    for (const auto& path : summary_paths) {
        const std::string file =
            std::filesystem::is_directory(path) ? path + "/summary.json" : path;
        const ojson s = read_json_file(file);
        const std::string v = s.at("meta").at("version").get<std::string>();
        if (version.empty()) version = v;
        else if (version != v)
            throw ConfigError("artifact version mismatch: " + version + " vs " + v + " in " +
                              file);
        for (const auto& row : s.at("rows")) {
            rep.csv += row.at("space").get<std::string>() + "," +
                       std::to_string(row.at("p").get<int>()) + "," +
                       row.at("item").get<std::string>() + "," +
                       row.at("verdict").get<std::string>() + "," +
                       row.at("margin").get<std::string>() + "\n";
            ++rep.rows;
            const std::string verdict = row.at("verdict").get<std::string>();
            if (verdict == "fail") rep.verdict = worst_of(rep.verdict, Verdict::Fail);
            else if (verdict == "inconclusive")
                rep.verdict = worst_of(rep.verdict, Verdict::Inconclusive);
        }
    }
    rep.text = "report: " + std::to_string(rep.rows) + " row(s), worst verdict " +
               verdict_to_string(rep.verdict) + "\n";
    return rep;
}

} // namespace shiftlab

#endif
