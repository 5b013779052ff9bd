#pragma once

/**
 * @file report_io.hpp
 * @brief VerificationReport <-> JSON / TSV. Rationals travel as exact
 *        fraction strings ("p/q"), never as floats.
 */

#include "casoratia/verifier.hpp"

#include "json.hpp"

#include <sstream>
#include <string>

namespace casoratia::cli {

using json = nlohmann::ordered_json;

inline Rat parse_rat(const std::string& s) {
    Rat r(s, 10);
    r.canonicalize();
    return r;
}

/// Inverse of GQ::str(): "3/2", "3/2+5i", "-i", "2/7-1/3i", ...
inline GQ parse_gq(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_gq: empty string");
    if (s.back() != 'i') return GQ(parse_rat(s));
    std::string t = s.substr(0, s.size() - 1);
    // The imaginary part starts at the last sign not in leading position;
    // fraction strings never carry signs after '/'.
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;)
        if (t[k] == '+' || t[k] == '-') { split = k; break; }
    std::string re_s, im_s;
    if (split == std::string::npos) {
        im_s = t;
    } else {
        re_s = t.substr(0, split);
        im_s = t.substr(split);
    }
    if (im_s.empty() || im_s == "+") im_s = "1";
    else if (im_s == "-") im_s = "-1";
    else if (im_s[0] == '+') im_s = im_s.substr(1);  // mpq rejects a leading '+'
    Rat re = re_s.empty() ? Rat(0) : parse_rat(re_s);
    return GQ(re, parse_rat(im_s));
}

inline Verdict verdict_from_str(const std::string& s) {
    if (s == "Pass") return Verdict::Pass;
    if (s == "Fail") return Verdict::Fail;
    if (s == "Degenerate") return Verdict::Degenerate;
    throw std::invalid_argument("unknown verdict: " + s);
}

inline json params_to_json(const ParamPoint& p) {
    json j;
    json lam = json::array();
    for (const Rat& r : p.lam) lam.push_back(rat_str(r));
    j["lam"] = std::move(lam);
    if (p.qbase) j["sbase"] = rat_str(p.qbase->s());
    if (!p.eiphi.is_zero()) j["eiphi"] = p.eiphi.str();
    return j;
}

inline ParamPoint params_from_json(FamilyName fam, const json& j) {
    ParamPoint p;
    p.family = fam;
    for (const auto& v : j.at("lam")) p.lam.push_back(parse_rat(v.get<std::string>()));
    if (j.contains("sbase")) p.qbase.emplace(parse_rat(j["sbase"].get<std::string>()));
    if (j.contains("eiphi")) p.eiphi = parse_gq(j["eiphi"].get<std::string>());
    return p;
}

inline json serialize_report(const VerificationReport& r, bool timings = false) {
    json j;
    j["check_id"] = r.check_id;
    j["family"] = r.family;
    j["verdict"] = verdict_str(r.verdict);
    j["params"] = params_to_json(r.params);
    if (r.D) j["D"] = *r.D;
    if (r.N) j["N"] = *r.N;
    if (r.n_or_v) j["n_or_v"] = *r.n_or_v;
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (r.verdict == Verdict::Degenerate) {
        auto pos = r.witness.find("expected_degree=");
        if (pos != std::string::npos)
            j["expected_degree"] = std::stol(r.witness.substr(pos + 16));
    }
    if (r.ratio) j["ratio"] = r.ratio->str();
    j["seed"] = r.seed;
    j["resamples"] = r.resamples;
    if (timings) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline VerificationReport parse_report(const json& j) {
    VerificationReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.family = j.at("family").get<std::string>();
    r.verdict = verdict_from_str(j.at("verdict").get<std::string>());
    r.params = params_from_json(family(r.family).name, j.at("params"));
    if (j.contains("D")) r.D = j["D"].get<IndexSet>();
    if (j.contains("N")) r.N = j["N"].get<long>();
    if (j.contains("n_or_v")) r.n_or_v = j["n_or_v"].get<long>();
    if (j.contains("witness")) r.witness = j["witness"].get<std::string>();
    if (j.contains("ratio")) r.ratio = parse_gq(j["ratio"].get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.resamples = j.at("resamples").get<int>();
    if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<long>();
    return r;
}

inline bool report_eq(const VerificationReport& a, const VerificationReport& b) {
    auto pp = [](const ParamPoint& p, const ParamPoint& q) {
        if (p.family != q.family || p.lam != q.lam || p.eiphi != q.eiphi) return false;
        if (p.qbase.has_value() != q.qbase.has_value()) return false;
        return !p.qbase || p.qbase->s() == q.qbase->s();
    };
    return a.check_id == b.check_id && a.family == b.family && a.verdict == b.verdict &&
           pp(a.params, b.params) && a.D == b.D && a.N == b.N && a.n_or_v == b.n_or_v &&
           a.witness == b.witness && a.ratio == b.ratio && a.seed == b.seed &&
           a.resamples == b.resamples;
}

inline std::string tsv_header() {
    return "check_id\tfamily\tverdict\tD\tN\tn_or_v\tratio\tseed\tresamples\twitness";
}

inline std::string serialize_report_tsv(const VerificationReport& r) {
    std::ostringstream os;
    os << r.check_id << '\t' << r.family << '\t' << verdict_str(r.verdict) << '\t';
    if (r.D) {
        for (size_t k = 0; k < r.D->size(); ++k) os << (k ? "," : "") << (*r.D)[k];
    } else {
        os << '-';
    }
    os << '\t';
    if (r.N) os << *r.N; else os << '-';
    os << '\t';
    if (r.n_or_v) os << *r.n_or_v; else os << '-';
    os << '\t';
    if (r.ratio) os << r.ratio->str(); else os << '-';
    os << '\t' << r.seed << '\t' << r.resamples << '\t' << r.witness;
    return os.str();
}

}  // namespace casoratia::cli
