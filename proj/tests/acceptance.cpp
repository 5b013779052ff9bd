/**
 * Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
 *
 *   1. Casoratian calculus (conventions, conjugation, product and Jacobi
 *      identities, W[1,...] reduction, antisymmetry, both varphi_M laws)
 *   2. Family certification (difference equation n<=8 v<=6, shift relations)
 *   3. Twist suite + energy reflection + negative-control mutation
 *   4. Main identity over the full D/N grid
 *   5. Duality corollaries (poldual, potential duality, pseudo dual eq)
 *   6. Shape reduction (constant Xi-bar, PoD0= proportionality)
 *   7. AWqi with its exact constant; cqJ analogue
 *   8. Degree laws with bounded degeneracy rate
 *   9. Determinism (byte-identical JSON) and determinant oracle agreement
 */

#include "report_io.hpp"

#include "casoratia/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace casoratia;

namespace {

int g_failures = 0;

int thread_count() {
    if (const char* env = std::getenv("CASORATIA_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void report(int idx, const std::string& name, bool ok, double secs,
            const std::string& detail = "") {
    std::printf("criterion %d (%s): %s [%.1fs]%s%s\n", idx, name.c_str(),
                ok ? "PASS" : "FAIL", secs, detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

RingPoly rand_poly(Kind kind, std::mt19937_64& rng, long max_deg) {
    std::uniform_int_distribution<long> coef(-4, 4);
    RingPoly p = RingPoly::zero(kind);
    long lo = kind == Kind::Multiplicative ? -max_deg : 0;
    for (long d = lo; d <= max_deg; ++d) {
        long c = coef(rng);
        if (c) p = p + RingPoly::monomial(kind, d, GQ(c));
    }
    if (p.is_zero()) p = RingPoly::constant(kind, GQ(coef(rng) | 1));
    return p;
}

/// Run a verify_* with fresh draws until the verdict is not Degenerate.
VerificationReport with_resample(
    const FamilySpec& spec, std::uint64_t seed,
    const std::function<VerificationReport(const ParamPoint&)>& fn, int budget = 10) {
    VerificationReport r;
    for (int att = 0; att <= budget; ++att) {
        ParamPoint p = sample_params(spec, seed + static_cast<std::uint64_t>(att) * 7919u);
        try {
            r = fn(p);
        } catch (const DivisionByZero&) {
            r.verdict = Verdict::Degenerate;
            r.witness = "division by zero at drawn point";
        }
        r.resamples = att;
        if (r.verdict != Verdict::Degenerate) break;
    }
    return r;
}

/// Parallel map over a homogeneous task list; returns first failure witness.
std::string run_pool(size_t n_tasks, const std::function<std::string(size_t)>& task) {
    std::atomic<size_t> next{0};
    std::vector<std::string> fails(n_tasks);
    int nthreads = thread_count();
    std::vector<std::thread> ws;
    for (int t = 0; t < nthreads; ++t)
        ws.emplace_back([&] {
            for (;;) {
                size_t k = next.fetch_add(1);
                if (k >= n_tasks) return;
                fails[k] = task(k);
            }
        });
    for (auto& w : ws) w.join();
    for (const auto& f : fails)
        if (!f.empty()) return f;
    return "";
}

std::vector<IndexSet> grid_dsets() {
    std::vector<IndexSet> out;
    for (int mask = 1; mask < 32; ++mask) {
        IndexSet D;
        for (int b = 0; b < 5; ++b)
            if (mask & (1 << b)) D.push_back(b);
        if (D.size() <= 3) out.push_back(D);
    }
    return out;
}

// ---- criterion 1: Casoratian calculus --------------------------------------

bool casoratian_calculus(std::string& detail) {
    std::mt19937_64 rng(7777);
    const QBase qbm(Rat(1, 2));
    const FamilySpec& wspec = family("W");
    const FamilySpec& awspec = family("AW");

    for (Kind kind : {Kind::Additive, Kind::Multiplicative}) {
        const QBase* qb = kind == Kind::Multiplicative ? &qbm : nullptr;
        const FamilySpec& spec = kind == Kind::Additive ? wspec : awspec;
        const RingPoly one = RingPoly::constant(kind, GQ(1));

        // Conventions: empty product, singleton, W[1, x] = 1 (additive).
        if (casoratian({}, qb) != RingPoly::constant(Kind::Additive, GQ(1))) {
            detail = "empty Casoratian != 1";
            return false;
        }
        if (kind == Kind::Additive) {
            RingPoly x = RingPoly::variable(kind);
            if (casoratian({one, x}, qb) != one) {
                detail = "W[1, x] != 1";
                return false;
            }
        }

        // Both varphi_M laws.
        for (long M = 1; M <= 5; ++M) {
            RingPoly prod = varphi_m(spec, M, qb);
            for (long j = 1; j <= M; ++j)
                prod = prod * phi_poly(spec).shifted(M + 1 - 2 * j, qb);
            if (prod != varphi_m(spec, M + 1, qb)) {
                detail = "varphi product law fails at M=" + std::to_string(M);
                return false;
            }
            RingPoly lhs = varphi_m(spec, M, qb).shifted(1, qb) *
                           varphi_m(spec, M, qb).shifted(-1, qb) * phi_poly(spec);
            if (lhs != varphi_m(spec, M - 1, qb) * varphi_m(spec, M + 1, qb)) {
                detail = "varphi functional identity fails at M=" + std::to_string(M);
                return false;
            }
        }

        std::uniform_int_distribution<int> n_dist(1, 4);
        for (int iter = 0; iter < 200; ++iter) {
            const int n = n_dist(rng);
            std::vector<RingPoly> fs;
            for (int k = 0; k < n; ++k) fs.push_back(rand_poly(kind, rng, 4));
            const RingPoly w = casoratian(fs, qb);

            if (fs.size() == 1 && w != fs[0]) {
                detail = "W[f] != f";
                return false;
            }

            // Conjugation: W[f_1..f_n]* = W[f_1*..f_n*].
            std::vector<RingPoly> stars;
            for (const auto& f : fs) stars.push_back(f.star());
            if (w.star() != casoratian(stars, qb)) {
                detail = "conjugation identity fails";
                return false;
            }

            // dWformula1: W[g f_1,..,g f_n] = prod_j g(x_j^{(n)}) W[f_1..f_n].
            RingPoly g = rand_poly(kind, rng, 3);
            std::vector<RingPoly> gfs;
            for (const auto& f : fs) gfs.push_back(g * f);
            RingPoly gprod = RingPoly::constant(kind, GQ(1));
            for (int j = 1; j <= n; ++j) gprod = gprod * g.shifted(n + 1 - 2 * j, qb);
            if (casoratian(gfs, qb) != gprod * w) {
                detail = "dWformula1 fails";
                return false;
            }

            // Antisymmetry.
            if (n >= 2) {
                std::vector<RingPoly> sw = fs;
                std::swap(sw[0], sw[n - 1]);
                if (casoratian(sw, qb) != -w) {
                    detail = "antisymmetry fails";
                    return false;
                }
            }

            // W[1, f_1..f_n] = W[F_1..F_n], F = -i (f(x+ig/2) - f(x-ig/2)).
            std::vector<RingPoly> with1 = {one};
            std::vector<RingPoly> Fs;
            for (const auto& f : fs) {
                with1.push_back(f);
                Fs.push_back((f.shifted(1, qb) - f.shifted(-1, qb)).scaled(-GQ::i()));
            }
            if (casoratian(with1, qb) != casoratian(Fs, qb)) {
                detail = "W[1,...] reduction fails";
                return false;
            }

            // dWformula2 with |fvec| = n-1 <= 3 total entries.
            if (n <= 3) {
                std::vector<RingPoly> fvec(fs.begin(), fs.end() - 1);
                RingPoly gg = rand_poly(kind, rng, 3);
                RingPoly hh = rand_poly(kind, rng, 3);
                std::vector<RingPoly> fg = fvec, fh = fvec, fgh = fvec;
                fg.push_back(gg);
                fh.push_back(hh);
                fgh.push_back(gg);
                fgh.push_back(hh);
                RingPoly wf = fvec.empty() ? one : casoratian(fvec, qb);
                RingPoly lhs = casoratian({casoratian(fg, qb), casoratian(fh, qb)}, qb);
                RingPoly rhs = wf * casoratian(fgh, qb);
                if (lhs != rhs) {
                    detail = "dWformula2 fails";
                    return false;
                }
            }
        }
    }
    return true;
}

// ---- criterion 2: family certification -------------------------------------

bool family_certification(std::string& detail) {
    struct Task {
        FamilyName f;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (FamilyName f : all_families())
        for (int d = 0; d < 5; ++d) tasks.push_back({f, 500u + static_cast<std::uint64_t>(d)});
    detail = run_pool(tasks.size(), [&](size_t k) -> std::string {
        const FamilySpec& spec = family(tasks[k].f);
        VerificationReport r = with_resample(spec, tasks[k].seed, [&](const ParamPoint& p) {
            return verify_difference_eq(spec, p, 8, 6);
        });
        if (r.verdict != Verdict::Pass)
            return spec.id + " difference_eq: " + r.witness;
        r = with_resample(spec, tasks[k].seed, [&](const ParamPoint& p) {
            return verify_shift_relations(spec, p, 8);
        });
        if (r.verdict != Verdict::Pass)
            return spec.id + " shift_relations: " + r.witness;
        return "";
    });
    return detail.empty();
}

// ---- criterion 3: twist suite + negative control ---------------------------

bool twist_suite(std::string& detail) {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        for (int d = 0; d < 5; ++d) {
            VerificationReport r =
                with_resample(spec, 900u + static_cast<std::uint64_t>(d),
                              [&](const ParamPoint& p) { return verify_twist_relations(spec, p); });
            if (r.verdict != Verdict::Pass) {
                detail = spec.id + " twist_relations: " + r.witness;
                return false;
            }
        }
    }
    // Negative control: corrupting alpha must flip at least one verdict.
    MutationHooks mut;
    mut.alpha_factor = GQ(3, 2);
    bool flipped = false;
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 901);
        if (verify_twist_relations(spec, p, mut).verdict == Verdict::Fail) flipped = true;
    }
    if (!flipped) {
        detail = "alpha mutation flipped no verdict";
        return false;
    }
    return true;
}

// ---- criteria 4 & 5: the D/N grid ------------------------------------------

struct GridTask {
    FamilyName f;
    IndexSet D;
    long N;
    int draw;
};

std::vector<GridTask> grid_tasks() {
    std::vector<GridTask> tasks;
    for (FamilyName f : all_families())
        for (const IndexSet& D : grid_dsets())
            for (long extra = 0; extra <= 2; ++extra)
                for (int d = 0; d < 5; ++d)
                    tasks.push_back({f, D, *std::max_element(D.begin(), D.end()) + extra, d});
    return tasks;
}

std::string grid_witness(const GridTask& t, const char* check, const VerificationReport& r) {
    std::ostringstream os;
    os << family(t.f).id << " " << check << " D={";
    for (size_t k = 0; k < t.D.size(); ++k) os << (k ? "," : "") << t.D[k];
    os << "} N=" << t.N << " draw=" << t.draw << ": " << verdict_str(r.verdict) << " "
       << r.witness;
    return os.str();
}

bool main_identity_grid(std::string& detail) {
    std::vector<GridTask> tasks = grid_tasks();
    detail = run_pool(tasks.size(), [&](size_t k) -> std::string {
        const GridTask& t = tasks[k];
        const FamilySpec& spec = family(t.f);
        std::uint64_t seed = 4000u + k * 13u;
        VerificationReport r = with_resample(spec, seed, [&](const ParamPoint& p) {
            return verify_main_identity(spec, p, t.D, t.N);
        });
        return r.verdict == Verdict::Pass ? "" : grid_witness(t, "main_identity", r);
    });
    return detail.empty();
}

bool duality_grid(std::string& detail) {
    std::vector<GridTask> tasks = grid_tasks();
    detail = run_pool(tasks.size(), [&](size_t k) -> std::string {
        const GridTask& t = tasks[k];
        const FamilySpec& spec = family(t.f);
        std::uint64_t seed = 5000u + k * 13u;
        VerificationReport r = with_resample(spec, seed, [&](const ParamPoint& p) {
            return verify_poldual(spec, p, t.D, t.N, 2);
        });
        if (r.verdict != Verdict::Pass) return grid_witness(t, "poldual", r);
        r = with_resample(spec, seed + 1, [&](const ParamPoint& p) {
            return verify_potential_duality(spec, p, t.D, t.N);
        });
        if (r.verdict != Verdict::Pass) return grid_witness(t, "potential_duality", r);
        return "";
    });
    if (!detail.empty()) return false;

    // Pseudo dual difference equation, v <= 3, N <= 5.
    struct PTask {
        FamilyName f;
        long v, N;
    };
    std::vector<PTask> ptasks;
    for (FamilyName f : all_families())
        for (long v = 0; v <= 3; ++v)
            for (long N = v; N <= 5; ++N) ptasks.push_back({f, v, N});
    detail = run_pool(ptasks.size(), [&](size_t k) -> std::string {
        const PTask& t = ptasks[k];
        const FamilySpec& spec = family(t.f);
        VerificationReport r = with_resample(spec, 5500u + k * 17u, [&](const ParamPoint& p) {
            return verify_pseudo_diffeq_dual(spec, p, t.v, t.N);
        });
        if (r.verdict != Verdict::Pass)
            return spec.id + " pseudo_diffeq_dual v=" + std::to_string(t.v) +
                   " N=" + std::to_string(t.N) + ": " + r.witness;
        return "";
    });
    return detail.empty();
}

// ---- criterion 6: shape reduction ------------------------------------------

bool shape_reduction(std::string& detail) {
    std::mt19937_64 rng(606);
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 600);
        // Xi-bar_{0..n} must be a nonzero constant, n <= 5.
        for (long n = 0; n <= 5; ++n) {
            IndexSet full;
            for (long k = 0; k <= n; ++k) full.push_back(k);
            RingPoly c = xibar(spec, full, p);
            if (c.is_zero() || !c.is_constant()) {
                detail = spec.id + " Xi-bar_{0.." + std::to_string(n) + "} not constant";
                return false;
            }
        }
        // PoD0= for 10 random D with 0 not in D, max(D) <= 5.
        std::uniform_int_distribution<long> size_d(1, 3), elem_d(1, 5);
        for (int it = 0; it < 10; ++it) {
            IndexSet D;
            long want = size_d(rng);
            while (static_cast<long>(D.size()) < want) {
                long e = elem_d(rng);
                if (std::find(D.begin(), D.end(), e) == D.end()) D.push_back(e);
            }
            std::sort(D.begin(), D.end());
            VerificationReport r =
                with_resample(spec, 650u + static_cast<std::uint64_t>(it),
                              [&](const ParamPoint& q) { return verify_shape_reduction(spec, q, D); });
            if (r.verdict != Verdict::Pass) {
                detail = spec.id + " shape_reduction: " + r.witness;
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 7: AWqi -----------------------------------------------------

bool awqi_constants(std::string& detail) {
    for (const char* id : {"AW", "cqJ"}) {
        const FamilySpec& spec = family(id);
        for (int d = 0; d < 5; ++d) {
            VerificationReport r =
                with_resample(spec, 700u + static_cast<std::uint64_t>(d),
                              [&](const ParamPoint& p) { return verify_awqi(spec, p, 5); });
            if (r.verdict != Verdict::Pass) {
                detail = spec.id + " awqi: " + r.witness;
                return false;
            }
            if (!r.ratio) {
                detail = spec.id + " awqi reported no constant";
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 8: degree laws ----------------------------------------------

bool degree_laws(std::string& detail) {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<long> size_d(1, 2), elem_d(0, 4), n_d(0, 2);
    int total = 0, degenerate = 0;
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        for (int it = 0; it < 20; ++it) {
            IndexSet D;
            long want = size_d(rng);
            while (static_cast<long>(D.size()) < want) {
                long e = elem_d(rng);
                if (std::find(D.begin(), D.end(), e) == D.end()) D.push_back(e);
            }
            std::sort(D.begin(), D.end());
            long n = n_d(rng);
            std::uint64_t seed = 800u + static_cast<std::uint64_t>(it) * 31u;
            ++total;
            ParamPoint p = sample_params(spec, seed);
            VerificationReport first;
            try {
                first = verify_degree_laws(spec, p, D, n);
            } catch (const DivisionByZero&) {
                first.verdict = Verdict::Degenerate;
            }
            if (first.verdict == Verdict::Fail) {
                detail = spec.id + " degree_laws: " + first.witness;
                return false;
            }
            if (first.verdict == Verdict::Degenerate) {
                ++degenerate;
                VerificationReport again =
                    with_resample(spec, seed + 1, [&](const ParamPoint& q) {
                        return verify_degree_laws(spec, q, D, n);
                    });
                if (again.verdict != Verdict::Pass) {
                    detail = spec.id + " degenerate draw did not resample to Pass";
                    return false;
                }
            }
        }
    }
    if (degenerate * 20 > total) {  // more than 5%
        detail = "degeneracy rate " + std::to_string(degenerate) + "/" + std::to_string(total);
        return false;
    }
    detail = "degenerate " + std::to_string(degenerate) + "/" + std::to_string(total);
    return true;
}

// ---- criterion 9: determinism ----------------------------------------------

std::string batch_json() {
    VerifyOptions opt;
    opt.seed = 90;
    opt.draws = 2;
    opt.threads = thread_count();
    std::vector<VerificationReport> rs =
        run_batch({FamilyName::W, FamilyName::MP, FamilyName::AW, FamilyName::cqH}, opt);
    std::ostringstream os;
    for (const auto& r : rs) os << casoratia::cli::serialize_report(r).dump() << "\n";
    return os.str();
}

bool determinism(std::string& detail) {
    if (batch_json() != batch_json()) {
        detail = "identical seeds produced different JSON bytes";
        return false;
    }
    // Cofactor vs Bareiss on every M <= 2 grid cell (matrix order <= 3).
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 95);
        const QBase* qb = p.qbase ? &*p.qbase : nullptr;
        for (const IndexSet& D : grid_dsets()) {
            if (D.size() > 2) continue;
            std::vector<RingPoly> fs;
            for (long d : D) fs.push_back(eigen_poly(spec, d, p));
            fs.push_back(eigen_poly(spec, 5, p));
            if (casoratian(fs, qb, DetMethod::Cofactor) !=
                casoratian(fs, qb, DetMethod::Bareiss)) {
                detail = spec.id + " determinant methods disagree";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Criterion cs[] = {
        {"Casoratian calculus", casoratian_calculus},
        {"family certification", family_certification},
        {"twist suite", twist_suite},
        {"main identity grid", main_identity_grid},
        {"duality corollaries", duality_grid},
        {"shape reduction", shape_reduction},
        {"AWqi constants", awqi_constants},
        {"degree laws", degree_laws},
        {"determinism", determinism},
    };
    int idx = 0;
    for (const Criterion& c : cs) {
        ++idx;
        Timer t;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        report(idx, c.name, ok, t.secs(), detail);
    }
    return g_failures == 0 ? 0 : 1;
}
