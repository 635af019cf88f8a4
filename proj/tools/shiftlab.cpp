// shiftlab: scenario runner and direct subcommands for the shift laboratory.
//
// Exit codes: 0 all checks pass, 2 at least one inconclusive, 1 failure or
// usage/parse error (the failing item is named on stderr).

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <shiftlab/shiftlab.hpp>

namespace {

using namespace shiftlab;

struct SpaceFlags {
    std::string kind = "classic";
    int p = 0;
    std::string beta = "2";
    std::string nu = "1";
    std::string alpha = "0";

    SpaceSpec build() const {
        SpaceSpec spec;
        spec.kind = kind_from_string(kind);
        spec.p = p;
        spec.beta = pirat_from_string(beta);
        spec.nu = pirat_from_string(nu);
        spec.alpha = pirat_from_string(alpha);
        spec.validate();
        return spec;
    }
};

void add_space_flags(CLI::App* cmd, SpaceFlags& sf) {
    cmd->add_option("--space", sf.kind,
                    "space kind: classic|generalized|theta|disk (or full names)");
    cmd->add_option("-p,--order", sf.p, "shift order p >= 0");
    cmd->add_option("--beta", sf.beta, "generalized-space exponent (rational or decimal string)");
    cmd->add_option("--nu", sf.nu, "theta/disk parameter; accepts pi multiples like '2pi'");
    cmd->add_option("--alpha", sf.alpha, "theta lattice offset");
}

std::vector<Cplx> parse_lambdas(const std::vector<std::string>& raw) {
    std::vector<Cplx> out;
    for (const auto& s : raw) {
        const auto comma = s.find(',');
        if (comma == std::string::npos) {
            out.push_back(Cplx{Real(s)});
        } else {
            out.push_back(Cplx{Real(s.substr(0, comma)), Real(s.substr(comma + 1))});
        }
    }
    return out;
}

int finish(const Scenario& sc) {
    const ScenarioOutcome res = run_scenario(sc);
    std::cout << sc.name << ": " << verdict_to_string(res.verdict) << " (" << sc.out_dir
              << "/summary.json)\n";
    if (res.verdict != Verdict::Pass) {
        for (const auto& row : res.summary.at("rows")) {
            const std::string v = row.at("verdict").get<std::string>();
            if (v != "pass")
                std::cerr << "  " << v << ": " << row.at("item").get<std::string>() << "\n";
        }
    }
    return verdict_exit_code(res.verdict);
}

} // namespace

int main(int argc, char** argv) {
    using namespace shiftlab;
    set_working_digits(env_default_digits());

    CLI::App app{"numerical laboratory for weighted backward shifts and their symmetrizations"};
    app.require_subcommand(1);

    unsigned precision = 0;
    std::string out_dir = "out";
    bool timestamp = false;
    app.add_option("--precision", precision, "working precision in decimal digits");
    app.add_option("--out", out_dir, "output directory for artifacts");
    app.add_flag("--timestamp", timestamp, "embed a wall-clock timestamp in artifact metadata");

    // ---- run ----
    auto* cmd_run = app.add_subcommand("run", "execute scenario file(s)");
    std::vector<std::string> scenario_files;
    cmd_run->add_option("files", scenario_files, "scenario JSON file(s)")->required();

    // ---- report ----
    auto* cmd_report = app.add_subcommand("report", "merge scenario summaries into one table");
    std::vector<std::string> report_inputs;
    std::string report_csv;
    cmd_report->add_option("inputs", report_inputs, "summary.json files or their directories");
    cmd_report->add_option("--csv", report_csv, "also write the table as CSV to this path");

    // ---- direct task subcommands ----
    SpaceFlags sf;
    std::vector<std::string> lambda_raw;
    long N = 100, n_lo = -1, n_hi = -1, steps = 10;
    std::string gamma = "sqrt_n_log_n", beta_prime = "3", op_kind = "jacobi_sum";
    std::vector<std::string> hyps;
    long basis_index = -1;
    bool want_l2 = false;
    std::string mode = "sum", epsilon = "1e-2";
    long s_idx = 0, n_period = 2, n_trunc = 64, quad_order = 28, quad_n_max = 8;
    std::vector<long> probes;
    std::vector<std::string> roots_raw;
    std::vector<std::string> amps_raw;

    auto* cmd_weights = app.add_subcommand("weights", "weight table + composition consistency");
    add_space_flags(cmd_weights, sf);
    cmd_weights->add_option("--n-hi", n_hi, "largest index to tabulate");

    auto* cmd_certify = app.add_subcommand("certify", "hypothesis certificates");
    add_space_flags(cmd_certify, sf);
    cmd_certify->add_option("--hyp", hyps,
                            "hypothesis name(s): reciprocal_summability|log_concavity|"
                            "dominated_decay|strict_damping");
    cmd_certify->add_option("--lambda", lambda_raw, "eigenvalue(s), 're' or 're,im'");
    cmd_certify->add_option("--gamma", gamma, "dominating sequence: sqrt_n_log_n|geometric");
    cmd_certify->add_option("--beta-prime", beta_prime, "geometric gamma exponent (> 2)");
    cmd_certify->add_option("--n-lo", n_lo, "first index checked");
    cmd_certify->add_option("--n-hi", n_hi, "last index checked");

    auto* cmd_rec = app.add_subcommand("recurrence", "solve the three-term recurrence");
    add_space_flags(cmd_rec, sf);
    cmd_rec->add_option("--lambda", lambda_raw, "eigenvalue(s), 're' or 're,im'");
    cmd_rec->add_option("-N,--length", N, "number of coefficients");
    cmd_rec->add_flag("--l2", want_l2, "also certify square-summability (eigensum task)");
    cmd_rec->add_option("--gamma", gamma, "dominating sequence for --l2");
    cmd_rec->add_option("--beta-prime", beta_prime, "geometric gamma exponent (> 2)");

    auto* cmd_orbit = app.add_subcommand("orbit", "iterate a vector under a truncated operator");
    add_space_flags(cmd_orbit, sf);
    cmd_orbit->add_option("--operator", op_kind, "backward_shift|forward_shift|jacobi_sum");
    cmd_orbit->add_option("--steps", steps, "number of iterations");
    cmd_orbit->add_option("-N,--length", N, "truncation dimension");
    cmd_orbit->add_option("--lambda", lambda_raw, "eigenvalue for an eigenvector start");
    cmd_orbit->add_option("--basis-index", basis_index, "start from basis vector P_k instead");

    auto* cmd_per = app.add_subcommand("periodic", "periodic points and periodic approximation");
    add_space_flags(cmd_per, sf);
    cmd_per->add_option("--mode", mode, "sum (Jacobi periodic point) | shift | approx");
    cmd_per->add_option("--root", roots_raw, "root(s) of unity as 'num/den', e.g. 1/2");
    cmd_per->add_option("--amplitude", amps_raw, "amplitude(s), 're' or 're,im'");
    cmd_per->add_option("-N,--length", N, "truncation dimension (sum mode)");
    cmd_per->add_option("--gamma", gamma, "dominating sequence (sum mode)");
    cmd_per->add_option("--beta-prime", beta_prime, "geometric gamma exponent (> 2)");
    cmd_per->add_option("-s,--start", s_idx, "block start index (shift mode)");
    cmd_per->add_option("--period", n_period, "shift period parameter (shift mode)");
    cmd_per->add_option("--trunc", n_trunc, "truncation for the shift-mode check");
    cmd_per->add_option("--epsilon", epsilon, "target error (approx mode)");

    auto* cmd_quad = app.add_subcommand("quadrature", "function-space ground truth checks");
    add_space_flags(cmd_quad, sf);
    cmd_quad->add_option("--quad-order", quad_order, "polynomial degree the rule must handle");
    cmd_quad->add_option("--n-max", quad_n_max, "largest basis index exercised");
    cmd_quad->add_option("--lambda", lambda_raw, "coherent-state eigenvalue (classic space)");

    auto* cmd_asym = app.add_subcommand("asymptotics", "weight growth-class report");
    add_space_flags(cmd_asym, sf);
    cmd_asym->add_option("--probe", probes, "probe index(es)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (precision > 0) set_working_digits(precision);

        if (cmd_run->parsed()) {
            std::vector<Scenario> batch;
            for (const auto& file : scenario_files) {
                const ojson doc = read_json_file(file);
                if (doc.is_array())
                    for (const auto& item : doc) batch.push_back(scenario_from_json(item));
                else
                    batch.push_back(scenario_from_json(doc));
            }
            // Scenarios in one batch must not share an output directory, or the
            // later summary would silently overwrite the earlier one.
            std::set<std::string> dirs;
            for (const auto& sc : batch)
                if (!dirs.insert(sc.out_dir).second)
                    throw ConfigError("scenarios in one batch must write to distinct output "
                                      "directories: duplicate '" +
                                      sc.out_dir + "'");
            Verdict worst = Verdict::Pass;
            for (Scenario& sc : batch) {
                if (precision > 0) sc.precision = precision;
                if (timestamp) sc.timestamp = true;
                const auto res = run_scenario(sc);
                std::cout << sc.name << ": " << verdict_to_string(res.verdict) << "\n";
                if (res.verdict != Verdict::Pass)
                    for (const auto& row : res.summary.at("rows")) {
                        const std::string v = row.at("verdict").get<std::string>();
                        if (v != "pass")
                            std::cerr << "  " << v << ": " << row.at("item").get<std::string>()
                                      << "\n";
                    }
                worst = worst_of(worst, res.verdict);
            }
            return verdict_exit_code(worst);
        }

        if (cmd_report->parsed()) {
            const ReportBundle rep = report_bundle(report_inputs);
            std::cout << rep.csv << rep.text;
            if (!report_csv.empty()) write_text_file(report_csv, rep.csv);
            return verdict_exit_code(rep.verdict);
        }

        Scenario sc;
        sc.space = sf.build();
        sc.precision = precision;
        sc.out_dir = out_dir;
        sc.timestamp = timestamp;
        sc.lambdas = parse_lambdas(lambda_raw);
        sc.N = N;
        sc.n_lo = n_lo;
        sc.n_hi = n_hi;
        sc.gamma = gamma;
        sc.beta_prime = rat_from_string(beta_prime);
        sc.hypotheses = hyps;
        sc.steps = steps;
        sc.op_kind = op_kind;
        sc.basis_index = basis_index;
        sc.epsilon = epsilon;
        sc.s = s_idx;
        sc.N_period = n_period;
        sc.N_trunc = n_trunc;
        sc.quad_order = quad_order;
        sc.quad_n_max = quad_n_max;
        sc.probes = probes;
        for (const auto& r : roots_raw) {
            const auto slash = r.find('/');
            if (slash == std::string::npos)
                throw ConfigError("root must look like 'num/den': " + r);
            RootOfUnity root;
            root.num = std::stol(r.substr(0, slash));
            root.den = std::stol(r.substr(slash + 1));
            sc.roots.push_back(root);
        }
        sc.amplitudes = parse_lambdas(amps_raw);

        if (cmd_weights->parsed()) {
            sc.task = "weights";
            sc.name = "weights-" + sf.kind + "-p" + std::to_string(sf.p);
        } else if (cmd_certify->parsed()) {
            sc.task = "certify";
            sc.name = "certify-" + sf.kind + "-p" + std::to_string(sf.p);
        } else if (cmd_rec->parsed()) {
            sc.task = want_l2 ? "eigensum" : "recurrence";
            sc.name = sc.task + "-" + sf.kind + "-p" + std::to_string(sf.p);
        } else if (cmd_orbit->parsed()) {
            sc.task = "orbit";
            sc.name = "orbit-" + sf.kind + "-p" + std::to_string(sf.p);
        } else if (cmd_per->parsed()) {
            if (mode == "sum") sc.task = "periodic_sum";
            else if (mode == "shift") sc.task = "periodic_hp";
            else if (mode == "approx") sc.task = "approximate";
            else throw ConfigError("unknown periodic mode: '" + mode + "'");
            sc.name = sc.task + "-" + sf.kind + "-p" + std::to_string(sf.p);
        } else if (cmd_quad->parsed()) {
            sc.task = "quadrature";
            sc.name = "quadrature-" + sf.kind;
        } else if (cmd_asym->parsed()) {
            sc.task = "asymptotics";
            sc.name = "asymptotics-" + sf.kind;
        } else {
            std::cerr << "no subcommand selected\n";
            return 1;
        }
        return finish(sc);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
