#ifndef SHIFTLAB_IO_HPP
#define SHIFTLAB_IO_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "operators.hpp"
#include "precision.hpp"
#include "quadrature.hpp"
#include "recurrence.hpp"
#include "spaces.hpp"
#include "version.hpp"
#include "weights.hpp"

namespace shiftlab {

using ojson = nlohmann::ordered_json;

// Numbers are serialized as decimal strings at working precision so output
// does not depend on binary-float formatting.
inline std::string real_str(const Real& x, unsigned digits = 0) {
    return x.str(digits ? digits : working_digits());
}

inline ojson cplx_json(const Cplx& z) {
    return ojson{{"re", real_str(z.re)}, {"im", real_str(z.im)}};
}

inline ojson meta_json(std::optional<std::string> timestamp = std::nullopt) {
    ojson m;
    m["artifact"] = "shiftlab";
    m["version"] = artifact_version();
    m["precision_digits"] = working_digits();
    if (timestamp) m["timestamp"] = *timestamp;
    return m;
}

inline ojson space_json(const SpaceSpec& spec) {
    ojson s;
    s["kind"] = kind_to_string(spec.kind);
    switch (spec.kind) {
        case SpaceKind::GeneralizedBargmann: s["beta"] = pirat_to_string(spec.beta); break;
        case SpaceKind::ThetaFockBargmann:
            s["nu"] = pirat_to_string(spec.nu);
            s["alpha"] = pirat_to_string(spec.alpha);
            break;
        case SpaceKind::PoincareDisk: s["nu"] = pirat_to_string(spec.nu); break;
        default: break;
    }
    s["p"] = spec.p;
    return s;
}

inline ojson certificate_json(const Certificate& c,
                              std::optional<std::string> timestamp = std::nullopt) {
    ojson j;
    j["schema"] = "shiftlab.certificate/1";
    ojson body;
    body["hypothesis"] = hypothesis_to_string(c.hypothesis);
    body["space"] = space_json(c.spec);
    body["range"] = ojson{{"lo", c.n_lo}, {"hi", c.n_hi}};
    body["verdict"] = verdict_to_string(c.verdict);
    body["margin"] = real_str(c.margin);
    if (c.threshold_n0)
        body["threshold_n0"] = *c.threshold_n0;
    else
        body["threshold_n0"] = nullptr;
    body["certified_all_n"] = c.certified_all_n;
    body["exact_arithmetic"] = c.exact_arithmetic;
    ojson ws = ojson::array();
    for (const auto& w : c.witnesses)
        ws.push_back(ojson{{"n", w.n}, {"lhs", real_str(w.lhs)}, {"rhs", real_str(w.rhs)}});
    body["witnesses"] = ws;
    body["notes"] = c.notes;
    ojson det = ojson::object();
    for (const auto& [k, v] : c.details) det[k] = v;
    body["details"] = det;
    j["certificate"] = body;
    j["meta"] = meta_json(std::move(timestamp));
    return j;
}

inline ojson l2_report_json(const L2Report& r) {
    ojson j;
    j["M"] = real_str(r.M);
    j["m_from"] = r.m_from;
    j["locked"] = r.locked;
    if (r.threshold_n0)
        j["threshold_n0"] = *r.threshold_n0;
    else
        j["threshold_n0"] = nullptr;
    j["damping_margin"] = real_str(r.damping_margin);
    if (r.tail_bound)
        j["tail_bound"] = real_str(*r.tail_bound);
    else
        j["tail_bound"] = nullptr;
    j["partial_sum"] = real_str(r.partial_sum);
    j["certified"] = r.certified;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline ojson operator_json(const TruncatedOperator& op) {
    ojson j;
    j["kind"] = op_kind_to_string(op.kind());
    j["dim"] = op.dim();
    j["offset"] = op.offset();
    j["weights"] = op.weight_name();
    ojson band = ojson::array();
    for (long n = op.offset(); n <= op.top() - 1; ++n) band.push_back(real_str(op.band_weight(n)));
    j["band"] = band;
    return j;
}

// ---------------------------------------------------------------------------
// CSV traces
// ---------------------------------------------------------------------------

// columns: n,u_re,u_im,abs2,partial_sum
inline std::string recurrence_csv(const RecurrenceSolution& sol) {
    std::string out = "n,u_re,u_im,abs2,partial_sum\n";
    for (long n = 1; n <= sol.N; ++n) {
        const Cplx& u = sol.at(n);
        out += std::to_string(n) + "," + real_str(u.re) + "," + real_str(u.im) + "," +
               real_str(norm2(u)) + "," + real_str(sol.partial_sum(n)) + "\n";
    }
    return out;
}

// columns: step,norm,residual,window_lo,window_hi
inline std::string orbit_csv(const OrbitTrace& trace) {
    std::string out = "step,norm,residual,window_lo,window_hi\n";
    for (const auto& r : trace.rows)
        out += std::to_string(r.step) + "," + real_str(r.norm) + "," + real_str(r.residual) +
               "," + std::to_string(r.window_lo) + "," + std::to_string(r.window_hi) + "\n";
    return out;
}

// columns: x,y,re,im
inline std::string samples_csv(const std::vector<FunctionSample>& rows) {
    std::string out = "x,y,re,im\n";
    for (const auto& r : rows)
        out += real_str(r.x) + "," + real_str(r.y) + "," + real_str(r.re) + "," +
               real_str(r.im) + "\n";
    return out;
}

// columns: n,weight  (weight values of a sequence over a range)
inline std::string weights_csv(const WeightSequence& ws, long n_lo, long n_hi) {
    std::string out = "n,weight\n";
    for (long n = n_lo; n <= n_hi; ++n) {
        const auto v = ws.query(n);
        out += std::to_string(n) + "," + (v.zero_action ? std::string("0") : real_str(v.value)) +
               "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f << content;
    if (!f) throw ConfigError("write failed: " + path);
}

inline void write_json_file(const std::string& path, const ojson& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline ojson read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open: " + path);
    ojson j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw ConfigError("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

} // namespace shiftlab

#endif
