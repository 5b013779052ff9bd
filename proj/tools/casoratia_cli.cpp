/**
 * casoratia — exact verification of Casoratian identities for the
 * Askey-scheme families with pure imaginary shifts.
 *
 * Commands:
 *   verify         run the full check suite at seeded parameter draws
 *   fuzz           randomized index sets, many draws, same exact checks
 *   list-families  the eleven families with their parameter arities
 *   show-poly      eta-expansion of one eigenpolynomial
 *
 * Exit codes: 0 all Pass, 1 config error or any Fail, 2 Degenerate
 * remaining after the resample budget.
 */

#include "report_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

namespace {

using namespace casoratia;
using casoratia::cli::json;

int thread_count() {
    if (const char* env = std::getenv("CASORATIA_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::vector<FamilyName> resolve_families(const std::string& name) {
    if (name == "all") return {};
    return {family(name).name};  // throws UnknownFamily
}

struct Emitter {
    std::ostream* os = &std::cout;
    std::ofstream file;
    std::string format = "json";
    bool timings = false;
    bool wrote_header = false;

    void open(const std::string& out) {
        if (out.empty() || out == "-") return;
        file.open(out);
        if (!file) throw CLI::ValidationError("--out", "cannot open " + out);
        os = &file;
    }

    void emit(const VerificationReport& r) {
        if (format == "tsv") {
            if (!wrote_header) {
                *os << casoratia::cli::tsv_header() << "\n";
                wrote_header = true;
            }
            *os << casoratia::cli::serialize_report_tsv(r) << "\n";
        } else {
            *os << casoratia::cli::serialize_report(r, timings).dump() << "\n";
        }
    }
};

void sort_reports(std::vector<VerificationReport>& rs) {
    std::stable_sort(rs.begin(), rs.end(),
                     [](const VerificationReport& a, const VerificationReport& b) {
                         if (a.family != b.family) return a.family < b.family;
                         if (a.check_id != b.check_id) return a.check_id < b.check_id;
                         return a.seed < b.seed;
                     });
}

int exit_code(const std::vector<VerificationReport>& rs) {
    bool fail = false, degen = false;
    for (const auto& r : rs) {
        fail = fail || r.verdict == Verdict::Fail;
        degen = degen || r.verdict == Verdict::Degenerate;
    }
    if (fail) return 1;
    if (degen) return 2;
    return 0;
}

IndexSet parse_dset(const std::string& s) {
    IndexSet out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stol(tok));
    std::sort(out.begin(), out.end());
    if (out.empty() || std::adjacent_find(out.begin(), out.end()) != out.end() || out.front() < 0)
        throw CLI::ValidationError("--dset", "need distinct non-negative integers");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Casoratian identity verification for the Askey scheme"};
    app.require_subcommand(1);

    std::string fam_name = "all", dset_str = "1,2", out_path, format = "json", sbase_str = "1/2";
    long N_flag = -1, n_extra = 0, n_max = 3, v_max = 2, poly_n = 2;
    std::uint64_t seed = 1;
    int draws = 5;
    bool stable_order = false, timings = false;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--family", fam_name, "family id or 'all'");
        c->add_option("--dset", dset_str, "index set D, comma separated");
        c->add_option("--N", N_flag, "level N (default: auto = max(D))");
        c->add_option("--N-extra", n_extra, "add k to the auto N");
        c->add_option("--seed", seed, "master RNG seed");
        c->add_option("--draws", draws, "independent parameter draws")->check(CLI::PositiveNumber);
        c->add_option("--sbase", sbase_str, "fourth root s of q, a fraction in (0,1)");
        c->add_option("--n-max", n_max, "eigenpolynomial degree bound");
        c->add_option("--v-max", v_max, "pseudo virtual state bound");
        c->add_option("--out", out_path, "output path ('-' = stdout)");
        c->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
        c->add_flag("--stable-order", stable_order, "sort reports before emission");
        c->add_flag("--timings", timings, "include elapsed_ms in reports");
    };

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify);
    CLI::App* fuzz = app.add_subcommand("fuzz", "randomized index sets per draw");
    add_common(fuzz);
    long fuzz_dmax = 5;
    fuzz->add_option("--dmax", fuzz_dmax, "largest index eligible for random D");
    CLI::App* listf = app.add_subcommand("list-families", "enumerate the families");
    listf->add_option("--format", format, "json or text");
    CLI::App* showp = app.add_subcommand("show-poly", "print eta-coefficients of P-check_n");
    showp->add_option("--family", fam_name, "family id")->required();
    showp->add_option("--n", poly_n, "degree");
    showp->add_option("--seed", seed, "parameter draw seed");
    showp->add_option("--sbase", sbase_str, "fourth root s of q");

    CLI11_PARSE(app, argc, argv);

    try {
        if (listf->parsed()) {
            for (FamilyName f : all_families()) {
                const FamilySpec& s = family(f);
                if (format == "json") {
                    json j;
                    j["id"] = s.id;
                    j["n_params"] = s.n_params;
                    j["kind"] = s.kind == Kind::Additive ? "additive" : "multiplicative";
                    j["group_b"] = s.group_b;
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << s.id << "\t" << s.n_params << " params\t"
                              << (s.kind == Kind::Additive ? "additive" : "multiplicative")
                              << (s.group_b ? "\tgroup B" : "") << "\n";
                }
            }
            return 0;
        }

        Rat sbase = casoratia::cli::parse_rat(sbase_str);
        if (sbase <= 0 || sbase >= 1)
            throw CLI::ValidationError("--sbase", "must lie in (0,1)");

        if (showp->parsed()) {
            const FamilySpec& s = family(fam_name);
            ParamPoint p = sample_params(s, seed, sbase);
            EtaPoly e = to_eta_basis(eigen_poly(s, poly_n, p), s.eta);
            json j;
            j["family"] = s.id;
            j["n"] = poly_n;
            j["params"] = casoratia::cli::params_to_json(p);
            json coeffs = json::array();
            for (const GQ& c : e.coeffs()) coeffs.push_back(c.str());
            j["eta_coeffs"] = std::move(coeffs);
            std::cout << j.dump() << "\n";
            return 0;
        }

        VerifyOptions opt;
        opt.seed = seed;
        opt.draws = draws;
        opt.sbase = sbase;
        opt.dset = parse_dset(dset_str);
        if (N_flag >= 0) opt.N = N_flag;
        opt.n_extra = n_extra;
        opt.n_max = n_max;
        opt.v_max = v_max;
        opt.threads = thread_count();
        std::vector<FamilyName> fams = resolve_families(fam_name);

        Emitter em;
        em.format = format;
        em.timings = timings;
        em.open(out_path);

        std::vector<VerificationReport> reports;
        if (verify->parsed()) {
            reports = run_batch(fams, opt);
        } else {  // fuzz: a fresh random index set per draw, one draw each
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<long> size_d(1, 3), elem_d(0, fuzz_dmax);
            for (int d = 0; d < draws; ++d) {
                IndexSet D;
                long want = size_d(rng);
                while (static_cast<long>(D.size()) < want) {
                    long e = elem_d(rng);
                    if (std::find(D.begin(), D.end(), e) == D.end()) D.push_back(e);
                }
                std::sort(D.begin(), D.end());
                VerifyOptions o = opt;
                o.dset = D;
                o.N.reset();
                o.draws = 1;
                o.seed = seed + static_cast<std::uint64_t>(d) * 0x9e3779b9u;
                auto batch = run_batch(fams, o);
                reports.insert(reports.end(), batch.begin(), batch.end());
            }
        }

        if (stable_order) sort_reports(reports);
        for (const auto& r : reports) em.emit(r);
        return exit_code(reports);
    } catch (const UnknownFamily& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
