#include "casoratia/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace casoratia {

namespace {

const QBase* shift_base(const ParamPoint& p) { return p.qbase ? &*p.qbase : nullptr; }

VerificationReport base_report(const std::string& id, const FamilySpec& spec,
                               const ParamPoint& p) {
    VerificationReport r;
    r.check_id = id;
    r.family = spec.id;
    r.params = p;
    return r;
}

void fail(VerificationReport& r, std::string witness) {
    r.verdict = Verdict::Fail;
    if (r.witness.empty()) r.witness = std::move(witness);
}

void degenerate(VerificationReport& r, std::string note) {
    if (r.verdict == Verdict::Fail) return;
    r.verdict = Verdict::Degenerate;
    if (r.witness.empty()) r.witness = std::move(note);
}

std::string var_of(const FamilySpec& spec) {
    return spec.kind == Kind::Additive ? "x" : "z";
}

std::string diff_witness(const FamilySpec& spec, const RingPoly& l, const RingPoly& r) {
    return "difference " + (l - r).str(var_of(spec));
}

long eta_degree(const FamilySpec& spec, const RingPoly& f) {
    return to_eta_basis(f, spec.eta).degree();
}

/// Proportionality with witness plumbing; both sides must be nonzero.
void check_prop(VerificationReport& r, const FamilySpec& spec, const RingPoly& l,
                const RingPoly& r_poly, const std::string& what) {
    if (l.is_zero() || r_poly.is_zero()) {
        degenerate(r, what + ": zero polynomial");
        return;
    }
    Proportionality pr = proportional(l, r_poly);
    if (!pr.verdict) {
        fail(r, what + ": not proportional; " +
                    diff_witness(spec, l.scaled(r_poly.leading()), r_poly.scaled(l.leading())));
        return;
    }
    if (!r.ratio) r.ratio = pr.ratio;
}

GQ mutated_alpha(const FamilySpec& spec, const ParamPoint& p, const MutationHooks& mut) {
    GQ a = twist_constants(spec, p).first;
    if (mut.alpha_factor) a *= *mut.alpha_factor;
    return a;
}

}  // namespace

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Degenerate: return "Degenerate";
    }
    return "?";
}

VerificationReport verify_shift_relations(const FamilySpec& spec, const ParamPoint& p,
                                          long n_max, const MutationHooks& mut) {
    VerificationReport r = base_report("shift_relations", spec, p);
    const QBase* qb = shift_base(p);
    const RingPoly phi = phi_poly(spec);
    const ParamPoint up = shift_params(spec, p, 1);
    const RatFunc V = potential(spec, p);
    const RatFunc Vs = V.star();

    for (long n = 1; n <= n_max && r.verdict == Verdict::Pass; ++n) {
        r.n_or_v = n;
        const RingPoly pn = eigen_poly(spec, n, p);
        const RingPoly pn1 = eigen_poly(spec, n - 1, up);

        // (i) forward: i phi^{-1} [P_n(x-i gamma/2) - P_n(x+i gamma/2)] = f_n P_{n-1}(lam+delta)
        GQ fn = fn_factor(spec, n, p);
        if (mut.fn_factor) fn *= *mut.fn_factor;
        RingPoly num = (pn.shifted(-1, qb) - pn.shifted(1, qb)).scaled(GQ::i());
        try {
            RingPoly lhs = exact_div(num, phi);
            if (lhs != pn1.scaled(fn))
                fail(r, "forward shift: " + diff_witness(spec, lhs, pn1.scaled(fn)));
        } catch (const NotDivisible& e) {
            fail(r, std::string("forward shift: ") + e.what());
        }

        // (ii) backward: B = -i (V e^{gamma p/2} - V* e^{-gamma p/2}) o phi(x),
        // so phi multiplies first and rides along with the shifts.
        const RingPoly g = phi * pn1;
        RatFunc lhs2 = V * RatFunc(g.shifted(-1, qb)) - Vs * RatFunc(g.shifted(1, qb));
        lhs2 = lhs2.scaled(-GQ::i());
        RatFunc rhs2(pn.scaled(bn_factor(spec, n, p)));
        if (lhs2 != rhs2) fail(r, "backward shift mismatch at n=" + std::to_string(n));
    }

    // (iii) shape covariance: V(x; lam+delta) = kappa^{-1} (phi(x-i gamma)/phi(x)) V(x-i gamma/2; lam)
    RatFunc lhs3 = potential(spec, up);
    RatFunc rhs3 = V.shifted(-1, qb) * RatFunc(phi.shifted(-2, qb), phi);
    rhs3 = rhs3.scaled(GQ(kappa(spec, p)).inv());
    if (lhs3 != rhs3) fail(r, "potential shape covariance mismatch");
    return r;
}

VerificationReport verify_difference_eq(const FamilySpec& spec, const ParamPoint& p,
                                        long n_max, long v_max, const MutationHooks& mut) {
    VerificationReport r = base_report("difference_eq", spec, p);
    const QBase* qb = shift_base(p);
    const RatFunc V = potential(spec, p);
    const RatFunc Vs = V.star();

    for (long n = 0; n <= n_max && r.verdict == Verdict::Pass; ++n) {
        r.n_or_v = n;
        const RingPoly pn = eigen_poly(spec, n, p);
        RatFunc lhs = V * RatFunc(pn.shifted(-2, qb) - pn) + Vs * RatFunc(pn.shifted(2, qb) - pn);
        if (lhs != RatFunc(pn.scaled(energy(spec, n, p))))
            fail(r, "difference equation fails at n=" + std::to_string(n));
    }

    // pseudo variant: the twisted operator on xi_v, plus the energy reflection.
    const ParamPoint tp = twist_params(spec, p);
    const RatFunc Vp = potential(spec, p, true);
    const RatFunc Vps = Vp.star();
    const GQ alpha = mutated_alpha(spec, p, mut);
    const GQ alphap = twist_constants(spec, p).second;
    for (long v = 0; v <= v_max && r.verdict == Verdict::Pass; ++v) {
        r.n_or_v = v;
        const RingPoly xv = pseudo_poly(spec, v, p);
        const GQ ev = energy(spec, v, tp);
        RatFunc lhs = Vp * RatFunc(xv.shifted(-2, qb) - xv) + Vps * RatFunc(xv.shifted(2, qb) - xv);
        if (lhs != RatFunc(xv.scaled(ev)))
            fail(r, "pseudo difference equation fails at v=" + std::to_string(v));
        if (alpha * ev + alphap != energy(spec, -v - 1, p))
            fail(r, "energy reflection fails at v=" + std::to_string(v));
    }
    return r;
}

VerificationReport verify_twist_relations(const FamilySpec& spec, const ParamPoint& p,
                                          const MutationHooks& mut) {
    VerificationReport r = base_report("twist_relations", spec, p);
    const QBase* qb = shift_base(p);
    const RatFunc V = potential(spec, p);
    const RatFunc Vp = potential(spec, p, true);
    const GQ alpha = mutated_alpha(spec, p, mut);
    const GQ alphap = twist_constants(spec, p).second;
    const RingPoly phi = phi_poly(spec);

    if (V * V.star().shifted(-2, qb) != (Vp * Vp.star().shifted(-2, qb)).scaled(alpha * alpha))
        fail(r, "V V*(x-i gamma) != alpha^2 V' V'*(x-i gamma)");
    RatFunc lin = (Vp + Vp.star()).scaled(alpha) - RatFunc::constant(spec.kind, alphap);
    if (V + V.star() != lin) fail(r, "V + V* != alpha (V' + V'*) - alpha'");
    RatFunc rhs3 = (V.star().shifted(-2, qb) * RatFunc(phi.shifted(-2, qb), phi)).scaled(alpha.inv());
    if (Vp != rhs3) fail(r, "V' != alpha^{-1} (phi(x-i gamma)/phi(x)) V*(x-i gamma)");

    const ParamPoint tp = twist_params(spec, p);
    for (long v = 0; v <= 3 && r.verdict == Verdict::Pass; ++v)
        if (alpha * energy(spec, v, tp) + alphap != energy(spec, -v - 1, p))
            fail(r, "energy reflection E~_v != E_{-v-1} at v=" + std::to_string(v));
    r.ratio = alpha;
    return r;
}

VerificationReport verify_energy_duality(const FamilySpec& spec, const ParamPoint& p,
                                         long N, long n_max) {
    VerificationReport r = base_report("energy_duality", spec, p);
    r.N = N;
    const ParamPoint lb = shift_params(spec, p, -(N + 1));
    const GQ kpow = GQ(kappa(spec, p)).pow(-(N + 1));
    const GQ em = energy(spec, -N - 1, p);
    for (long n = 0; n <= n_max && r.verdict == Verdict::Pass; ++n)
        if (energy(spec, n, p) - em != kpow * energy(spec, N + 1 + n, lb))
            fail(r, "E_n duality fails at n=" + std::to_string(n));
    for (long v = 0; v <= N && r.verdict == Verdict::Pass; ++v)
        if (energy(spec, -v - 1, p) - em != kpow * energy(spec, N - v, lb))
            fail(r, "E_{-v-1} duality fails at v=" + std::to_string(v));
    return r;
}

VerificationReport verify_main_identity(const FamilySpec& spec, const ParamPoint& p,
                                        const IndexSet& D, long N) {
    VerificationReport r = base_report("main_identity", spec, p);
    r.D = D;
    r.N = N;
    try {
        const RingPoly L = xi(spec, D, p);
        const DualData dual = dualize(spec, D, N, p);
        const RingPoly R = xibar(spec, dual.dbar, dual.lambda_bar);
        if (L.is_zero() || R.is_zero()) {
            degenerate(r, "zero Casoratian");
            return r;
        }
        const long expect = ell_d(D);
        const long got = eta_degree(spec, L);
        if (got != expect) {
            degenerate(r, "expected_degree=" + std::to_string(expect) +
                              " observed=" + std::to_string(got));
            return r;
        }
        check_prop(r, spec, L, R, "detiden");
    } catch (const NotInEtaImage& e) {
        fail(r, std::string("eta basis: ") + e.what());
    } catch (const DivisionByZero&) {
        degenerate(r, "division by zero at drawn point");
    }
    return r;
}

VerificationReport verify_poldual(const FamilySpec& spec, const ParamPoint& p,
                                  const IndexSet& D, long N, long n_max) {
    VerificationReport r = base_report("poldual", spec, p);
    r.D = D;
    r.N = N;
    const DualData dual = dualize(spec, D, N, p);
    for (long n = 0; n <= n_max && r.verdict == Verdict::Pass; ++n) {
        r.n_or_v = n;
        const RingPoly L = p_dn(spec, D, n, p);
        IndexSet S = dual.dbar;
        S.push_back(N + 1 + n);
        std::sort(S.begin(), S.end());
        const RingPoly R = xibar(spec, S, dual.lambda_bar);
        check_prop(r, spec, L, R, "poldual1 n=" + std::to_string(n));
    }
    for (size_t j = 0; j < D.size() && r.verdict == Verdict::Pass; ++j) {
        IndexSet Dj;
        for (size_t k = 0; k < D.size(); ++k)
            if (k != j) Dj.push_back(D[k]);
        const RingPoly L = xi(spec, Dj, p);
        IndexSet S = dual.dbar;
        S.push_back(N - D[j]);
        std::sort(S.begin(), S.end());
        const RingPoly R = xibar(spec, S, dual.lambda_bar);
        check_prop(r, spec, L, R, "poldual2 j=" + std::to_string(j + 1));
    }
    return r;
}

VerificationReport verify_potential_duality(const FamilySpec& spec, const ParamPoint& p,
                                            const IndexSet& D, long N) {
    VerificationReport r = base_report("potential_duality", spec, p);
    r.D = D;
    r.N = N;
    try {
        const QBase* qb = p.qbase ? &*p.qbase : nullptr;
        RatFunc lhs = deformed_potential_pv(spec, D, p);
        // Hamdual at the potential level: V-hat_D(x) = kappa^{-N-1} V^KA*(x - i gamma/2).
        RatFunc rhs = deformed_potential_ka(spec, D, N, p).star().shifted(-1, qb);
        rhs = rhs.scaled(GQ(kappa(spec, p)).pow(-(N + 1)));
        if (lhs != rhs) fail(r, "V-hat_D != kappa^{-N-1} V^KA*(x-i gamma/2)");
    } catch (const DivisionByZero&) {
        degenerate(r, "division by zero at drawn point");
    }
    return r;
}

VerificationReport verify_shape_reduction(const FamilySpec& spec, const ParamPoint& p,
                                          const IndexSet& D) {
    VerificationReport r = base_report("shape_reduction", spec, p);
    r.D = D;
    for (long d : D)
        if (d == 0) {
            fail(r, "precondition violated: 0 in D");
            return r;
        }
    IndexSet with0 = D;
    with0.push_back(0);
    std::sort(with0.begin(), with0.end());
    IndexSet minus1;
    for (long d : D) minus1.push_back(d - 1);
    std::sort(minus1.begin(), minus1.end());
    const RingPoly L = xibar(spec, with0, p);
    const RingPoly R = xibar(spec, minus1, shift_params(spec, p, 1));
    check_prop(r, spec, L, R, "PoD0=");
    for (long n = 0; n <= 3 && r.verdict == Verdict::Pass; ++n) {
        IndexSet full;
        for (long k = 0; k <= n; ++k) full.push_back(k);
        const RingPoly c = xibar(spec, full, p);
        if (c.is_zero() || !c.is_constant())
            fail(r, "Xi-bar_{0.." + std::to_string(n) + "} not a nonzero constant");
    }
    return r;
}

VerificationReport verify_xi_twist_link(const FamilySpec& spec, const ParamPoint& p,
                                        const IndexSet& D) {
    VerificationReport r = base_report("xi_twist_link", spec, p);
    r.D = D;
    const RingPoly L = xi(spec, D, p);
    const ParamPoint tp = twist_params(spec, p);
    const RingPoly R = xibar(spec, D, tp, shift_base(p));
    if (L != R) fail(r, "Xi_D(lam) != Xi-bar_D(t(lam)); " + diff_witness(spec, L, R));
    return r;
}

VerificationReport verify_awqi(const FamilySpec& spec, const ParamPoint& p, long n_max) {
    VerificationReport r = base_report("awqi", spec, p);
    if (spec.name != FamilyName::AW && spec.name != FamilyName::cqJ) {
        fail(r, "awqi applies to AW and cqJ only");
        return r;
    }
    const QBase& qb = p.qb();
    if (spec.name == FamilyName::AW) {
        const Rat q = qb.q();
        ParamPoint twa = twist_params(spec, p);  // a_j -> q/a_j, base q
        ParamPoint twb = p;                      // a_j -> a_j/q, base 1/q
        for (Rat& a : twb.lam) a = a / q;
        twb.qbase = qb.inverted();
        Rat b4 = p.lam[0] * p.lam[1] * p.lam[2] * p.lam[3];
        for (long n = 0; n <= n_max && r.verdict == Verdict::Pass; ++n) {
            r.n_or_v = n;
            const RingPoly L = eigen_poly(spec, n, twa);
            const RingPoly R = eigen_poly(spec, n, twb);
            GQ c = GQ(-1).pow(n) * GQ(qb.qpow4(2 * n * (3 * n + 5))) / GQ(b4).pow(n);
            if (L != R.scaled(c)) fail(r, "AWqi constant mismatch at n=" + std::to_string(n));
            if (n == n_max) r.ratio = c;
        }
    } else {
        ParamPoint twa = twist_params(spec, p);  // (alpha,beta) -> (-alpha,-beta)
        ParamPoint twb = twa;
        twb.qbase = qb.inverted();
        for (long n = 0; n <= n_max && r.verdict == Verdict::Pass; ++n) {
            r.n_or_v = n;
            check_prop(r, spec, eigen_poly(spec, n, twa), eigen_poly(spec, n, twb),
                       "cqJ q<->1/q twist n=" + std::to_string(n));
        }
    }
    return r;
}

VerificationReport verify_pseudo_diffeq_dual(const FamilySpec& spec, const ParamPoint& p,
                                             long v, long N) {
    VerificationReport r = base_report("pseudo_diffeq_dual", spec, p);
    r.n_or_v = v;
    r.N = N;
    const QBase* qb = shift_base(p);
    const DualData dual = dualize(spec, {v}, N, p);
    const RingPoly xb = xibar(spec, dual.dbar, dual.lambda_bar);
    if (xb.is_zero()) {
        degenerate(r, "zero Casoratian");
        return r;
    }
    const RatFunc Vp = potential(spec, p, true);
    const GQ ev = energy(spec, v, twist_params(spec, p));
    RatFunc lhs = Vp * RatFunc(xb.shifted(-2, qb) - xb) +
                  Vp.star() * RatFunc(xb.shifted(2, qb) - xb);
    if (lhs != RatFunc(xb.scaled(ev))) fail(r, "XiDbeq fails");
    return r;
}

VerificationReport verify_degree_laws(const FamilySpec& spec, const ParamPoint& p,
                                      const IndexSet& D, long n) {
    VerificationReport r = base_report("degree_laws", spec, p);
    r.D = D;
    r.n_or_v = n;
    const long M = static_cast<long>(D.size());
    try {
        long got = eta_degree(spec, xi(spec, D, p));
        if (got != ell_d(D)) {
            degenerate(r, "expected_degree=" + std::to_string(ell_d(D)) +
                              " observed=" + std::to_string(got));
            return r;
        }
        got = eta_degree(spec, p_dn(spec, D, n, p));
        const long expect = ell_d(D) + M + n;
        if (got != expect)
            degenerate(r, "expected_degree=" + std::to_string(expect) +
                              " observed=" + std::to_string(got));
    } catch (const NotInEtaImage& e) {
        fail(r, std::string("eta basis: ") + e.what());
    }
    return r;
}

const std::vector<std::string>& all_check_ids() {
    static const std::vector<std::string> ids = {
        "shift_relations", "difference_eq",      "twist_relations", "energy_duality",
        "main_identity",   "poldual",            "potential_duality", "shape_reduction",
        "xi_twist_link",   "awqi",               "pseudo_diffeq_dual", "degree_laws",
    };
    return ids;
}

namespace {

using CheckFn = std::function<VerificationReport(const ParamPoint&)>;

VerificationReport run_with_resample(const FamilySpec& spec, const VerifyOptions& opt,
                                     std::uint64_t base_seed, const CheckFn& fn) {
    VerificationReport out;
    for (int att = 0; att <= opt.max_resamples; ++att) {
        const std::uint64_t s = base_seed + static_cast<std::uint64_t>(att) * 7919u;
        const ParamPoint p = sample_params(spec, s, opt.sbase);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = fn(p);
        } catch (const DivisionByZero&) {
            out = base_report("?", spec, p);
            out.verdict = Verdict::Degenerate;
            out.witness = "division by zero at drawn point";
        } catch (const NotDivisible& e) {
            out = base_report("?", spec, p);
            out.verdict = Verdict::Fail;
            out.witness = std::string("exact division failed: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        out.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        out.seed = s;
        out.resamples = att;
        if (out.verdict != Verdict::Degenerate) break;
    }
    return out;
}

std::vector<std::pair<std::string, CheckFn>> suite_tasks(const FamilySpec& spec,
                                                         const VerifyOptions& opt) {
    IndexSet D = opt.dset;
    std::sort(D.begin(), D.end());
    const long maxd = D.empty() ? 0 : D.back();
    const long N = opt.N ? *opt.N : maxd + opt.n_extra;
    const long n_max = opt.n_max;
    const long v_max = opt.v_max;
    const MutationHooks mut = opt.mutate;

    IndexSet Dpos = D;  // 0-free variant for the shape reduction precondition
    if (!Dpos.empty() && Dpos.front() == 0)
        for (long& d : Dpos) d += 1;

    std::vector<std::pair<std::string, CheckFn>> tasks;
    auto add = [&](const std::string& id, CheckFn fn) { tasks.emplace_back(id, std::move(fn)); };

    add("shift_relations",
        [&spec, n_max, mut](const ParamPoint& p) { return verify_shift_relations(spec, p, n_max, mut); });
    add("difference_eq", [&spec, n_max, v_max, mut](const ParamPoint& p) {
        return verify_difference_eq(spec, p, n_max, v_max, mut);
    });
    add("twist_relations",
        [&spec, mut](const ParamPoint& p) { return verify_twist_relations(spec, p, mut); });
    add("energy_duality",
        [&spec, N, n_max](const ParamPoint& p) { return verify_energy_duality(spec, p, N, n_max); });
    add("main_identity",
        [&spec, D, N](const ParamPoint& p) { return verify_main_identity(spec, p, D, N); });
    add("poldual", [&spec, D, N, n_max](const ParamPoint& p) {
        return verify_poldual(spec, p, D, N, std::min<long>(n_max, 2));
    });
    add("potential_duality",
        [&spec, D, N](const ParamPoint& p) { return verify_potential_duality(spec, p, D, N); });
    add("shape_reduction",
        [&spec, Dpos](const ParamPoint& p) { return verify_shape_reduction(spec, p, Dpos); });
    add("xi_twist_link",
        [&spec, D](const ParamPoint& p) { return verify_xi_twist_link(spec, p, D); });
    if (spec.name == FamilyName::AW || spec.name == FamilyName::cqJ)
        add("awqi", [&spec, n_max](const ParamPoint& p) { return verify_awqi(spec, p, n_max); });
    const long v = std::min<long>(v_max, N);
    add("pseudo_diffeq_dual",
        [&spec, v, N](const ParamPoint& p) { return verify_pseudo_diffeq_dual(spec, p, v, N); });
    add("degree_laws",
        [&spec, D](const ParamPoint& p) { return verify_degree_laws(spec, p, D, 1); });
    return tasks;
}

std::uint64_t task_seed(const VerifyOptions& opt, size_t family_idx, size_t task_idx,
                        int draw) {
    return opt.seed * 1000003u +
           static_cast<std::uint64_t>(family_idx) * 131071u +
           static_cast<std::uint64_t>(task_idx) * 8191u +
           static_cast<std::uint64_t>(draw) * 127u + 1u;
}

}  // namespace

std::vector<VerificationReport> run_suite(const FamilySpec& spec, const VerifyOptions& opt) {
    std::vector<FamilyName> one = {spec.name};
    return run_batch(one, opt);
}

std::vector<VerificationReport> run_batch(const std::vector<FamilyName>& fams,
                                          const VerifyOptions& opt) {
    const std::vector<FamilyName>& names = fams.empty() ? all_families() : fams;
    struct Job {
        const FamilySpec* spec;
        std::string id;
        CheckFn fn;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (size_t fi = 0; fi < names.size(); ++fi) {
        const FamilySpec& spec = family(names[fi]);
        auto tasks = suite_tasks(spec, opt);
        for (int d = 0; d < opt.draws; ++d)
            for (size_t ti = 0; ti < tasks.size(); ++ti)
                jobs.push_back(Job{&spec, tasks[ti].first, tasks[ti].second,
                                   task_seed(opt, fi, ti, d)});
    }

    std::vector<VerificationReport> results(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            VerificationReport r = run_with_resample(*jobs[i].spec, opt, jobs[i].seed, jobs[i].fn);
            r.check_id = jobs[i].id;  // exception paths lose the id otherwise
            results[i] = std::move(r);
        }
    };
    const int nthreads = std::max(1, opt.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

}  // namespace casoratia
