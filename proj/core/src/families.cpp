#include "casoratia/families.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace casoratia {

namespace {

const Rat kHalf(1, 2);

std::vector<FamilySpec> make_registry() {
    std::vector<FamilySpec> r;
    auto add = [&](FamilyName n, const char* id, Kind k, int np, std::vector<Rat> delta,
                   EtaKind eta, bool gb) {
        r.push_back(FamilySpec{n, id, k, np, std::move(delta), eta, gb});
    };
    add(FamilyName::W, "W", Kind::Additive, 4, {kHalf, kHalf, kHalf, kHalf}, EtaKind::XSquared, false);
    add(FamilyName::AW, "AW", Kind::Multiplicative, 4, {kHalf, kHalf, kHalf, kHalf}, EtaKind::CosX, false);
    add(FamilyName::cdH, "cdH", Kind::Additive, 3, {kHalf, kHalf, kHalf}, EtaKind::XSquared, false);
    add(FamilyName::cH, "cH", Kind::Additive, 2, {kHalf, kHalf}, EtaKind::X, false);
    add(FamilyName::MP, "MP", Kind::Additive, 1, {kHalf}, EtaKind::X, false);
    add(FamilyName::cqJ, "cqJ", Kind::Multiplicative, 2, {Rat(1), Rat(1)}, EtaKind::CosX, false);
    add(FamilyName::cdqH, "cdqH", Kind::Multiplicative, 3, {kHalf, kHalf, kHalf}, EtaKind::CosX, true);
    add(FamilyName::ASC, "ASC", Kind::Multiplicative, 2, {kHalf, kHalf}, EtaKind::CosX, true);
    add(FamilyName::cbqH, "cbqH", Kind::Multiplicative, 1, {kHalf}, EtaKind::CosX, true);
    add(FamilyName::cqH, "cqH", Kind::Multiplicative, 0, {}, EtaKind::CosX, true);
    add(FamilyName::cqL, "cqL", Kind::Multiplicative, 1, {Rat(1)}, EtaKind::CosX, true);
    return r;
}

const std::vector<FamilySpec>& registry() {
    static const std::vector<FamilySpec> r = make_registry();
    return r;
}

long rat_to_long(const Rat& r) {
    if (r.get_den() != 1) throw std::logic_error("expected an integer parameter");
    return static_cast<long>(r.get_num().get_si());
}

// 2r as a long; cqJ/cqL carry alpha, beta in half-integer steps so that the
// shifted parameters never hit a zero of a q-shifted factorial.
long twice_rat(const Rat& r) { return rat_to_long(Rat(2) * r); }

// c + s*x (additive) -- a linear factor of the hypergeometric kind.
RingPoly lin(const GQ& c, const GQ& xcoef) {
    return RingPoly::constant(Kind::Additive, c) +
           RingPoly::monomial(Kind::Additive, 1, xcoef);
}

// 1 - a*z^{pm} with pm = +1 or -1.
RingPoly one_minus(const GQ& a, int pm) {
    return RingPoly::constant(Kind::Multiplicative, GQ(1)) +
           RingPoly::monomial(Kind::Multiplicative, pm, -a);
}

// Terminating ordinary hypergeometric sum:
//   pref * sum_{k=0}^n (-n)_k prod(u_i)_k prod_poly (P_i + .)_k
//                      / (prod(l_i)_k k!) * arg^k
// where each entry of poly_upper is a linear polynomial P_i contributing
// (P_i)_k = P_i (P_i+1) ... (P_i+k-1).
RingPoly hyper_sum(long n, const GQ& pref, const std::vector<GQ>& upper,
                   const std::vector<RingPoly>& poly_upper, const std::vector<GQ>& lower,
                   const GQ& arg) {
    RingPoly sum = RingPoly::zero(Kind::Additive);
    GQ scalar(1);
    RingPoly polyfac = RingPoly::constant(Kind::Additive, GQ(1));
    for (long k = 0;; ++k) {
        sum = sum + polyfac.scaled(scalar);
        if (k == n) break;
        GQ step = GQ(-n + k) * arg;
        for (const GQ& u : upper) step *= u + GQ(k);
        GQ den(k + 1);
        for (const GQ& l : lower) den *= l + GQ(k);
        scalar *= step / den;
        for (const RingPoly& pu : poly_upper)
            polyfac = polyfac * (pu + RingPoly::constant(Kind::Additive, GQ(k)));
    }
    return sum.scaled(pref);
}

// Terminating basic hypergeometric sum in base q:
//   pref * extra * sum_{k=0}^n (q^{-n};q)_k prod(u_i;q)_k
//       * prod over a in poly_as of (a z;q)_k (a z^{-1};q)_k
//       / ((q;q)_k prod(l_i;q)_k) * ((-1)^k q^{C(k,2)})^corr * argc^k z^{argdeg*k}
RingPoly q_hyper_sum(long n, const GQ& pref, const QBase& qb, const std::vector<GQ>& upper,
                     const std::vector<GQ>& poly_as, const std::vector<GQ>& lower,
                     const GQ& argc, long argdeg, int corr, long extra_deg) {
    const Rat q = qb.q();
    const GQ qmn(qb.qpow4(-4 * n));
    RingPoly sum = RingPoly::zero(Kind::Multiplicative);
    GQ scalar(1);
    GQ qk(1);  // q^k
    RingPoly polyfac = RingPoly::constant(Kind::Multiplicative, GQ(1));
    for (long k = 0;; ++k) {
        RingPoly term = polyfac;
        if (argdeg != 0 && k != 0)
            term = term * RingPoly::monomial(Kind::Multiplicative, argdeg * k, GQ(1));
        sum = sum + term.scaled(scalar);
        if (k == n) break;
        GQ step = (GQ(1) - qmn * qk) * argc;
        for (const GQ& u : upper) step *= GQ(1) - u * qk;
        GQ den = GQ(1) - GQ(q) * qk;
        for (const GQ& l : lower) den *= GQ(1) - l * qk;
        if (den.is_zero()) throw DivisionByZero();
        scalar *= step / den;
        for (int c = 0; c < corr; ++c) scalar *= -qk;
        for (int c = 0; c > corr; --c) scalar /= -qk;
        for (const GQ& a : poly_as)
            polyfac = polyfac * one_minus(a * qk, 1) * one_minus(a * qk, -1);
        qk *= GQ(q);
    }
    if (extra_deg != 0)
        sum = sum * RingPoly::monomial(Kind::Multiplicative, extra_deg, GQ(1));
    return sum.scaled(pref);
}

GQ as_gq(const Rat& r) { return GQ(r); }

}  // namespace

const FamilySpec& family(FamilyName name) {
    for (const auto& f : registry())
        if (f.name == name) return f;
    throw UnknownFamily("<enum>");
}

const FamilySpec& family(const std::string& id) {
    for (const auto& f : registry())
        if (f.id == id) return f;
    throw UnknownFamily(id);
}

const std::vector<FamilyName>& all_families() {
    static const std::vector<FamilyName> names = [] {
        std::vector<FamilyName> v;
        for (const auto& f : registry()) v.push_back(f.name);
        return v;
    }();
    return names;
}

ParamPoint sample_params(const FamilySpec& spec, std::uint64_t seed, const Rat& sbase) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 12), den(1, 12);
    auto draw_pos = [&] {
        // Stay off the half-integer lattice: parameter shifts and twists move
        // by multiples of 1/2, and a value landing on that lattice after a
        // shift produces vanishing Pochhammer denominators.
        for (;;) {
            Rat r(num(rng), den(rng));
            r.canonicalize();
            if (r.get_den() >= 3) return r;
        }
    };
    auto draw_unit = [&] {  // in (0, 1)
        int d = den(rng) + 1;
        std::uniform_int_distribution<int> nd(1, d - 1);
        Rat r(nd(rng), d);
        r.canonicalize();
        return r;
    };
    ParamPoint p;
    p.family = spec.name;
    if (spec.kind == Kind::Multiplicative) p.qbase.emplace(sbase);

    auto distinct_set = [&](int count, auto gen, bool check_sums) {
        for (;;) {
            std::vector<Rat> v;
            for (int j = 0; j < count; ++j) v.push_back(gen());
            std::set<Rat> vals(v.begin(), v.end());
            if (static_cast<int>(vals.size()) != count) continue;
            if (check_sums) {
                std::set<Rat> sums;
                bool ok = true;
                for (int a = 0; a < count && ok; ++a)
                    for (int b = a + 1; b < count && ok; ++b) {
                        Rat s = v[static_cast<size_t>(a)] + v[static_cast<size_t>(b)];
                        ok = sums.insert(s).second;
                        Rat twos = 2 * s;
                        twos.canonicalize();
                        if (twos.get_den() == 1) ok = false;  // sum on the lattice
                    }
                if (!ok) continue;
            }
            return v;
        }
    };

    switch (spec.name) {
        case FamilyName::W:
        case FamilyName::cdH:
        case FamilyName::cH:
            p.lam = distinct_set(spec.n_params, draw_pos, true);
            break;
        case FamilyName::MP: {
            p.lam = {draw_pos()};
            Rat t = draw_unit();
            Rat d = 1 + t * t;
            p.eiphi = GQ((1 - t * t) / d, 2 * t / d);
            break;
        }
        case FamilyName::AW:
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
            p.lam = distinct_set(spec.n_params, draw_unit, false);
            break;
        case FamilyName::cqJ: {
            // Half-odd alpha with integer beta keeps both alpha and alpha+beta
            // off the integers, so no lambda - k delta shift can zero out
            // q^{alpha+m} or the upper parameter q^{n+alpha+beta+1}.
            std::uniform_int_distribution<long> ab(0, 3);
            p.lam = {Rat(2 * ab(rng) + 1, 2), Rat(ab(rng) + 1)};
            p.lam[0].canonicalize();
            break;
        }
        case FamilyName::cqL: {
            std::uniform_int_distribution<long> ab(0, 3);
            p.lam = {Rat(2 * ab(rng) + 1, 2)};
            p.lam[0].canonicalize();
            break;
        }
        case FamilyName::cqH:
            break;
    }
    return p;
}

std::vector<GQ> series_params(const FamilySpec& spec, const ParamPoint& p) {
    std::vector<GQ> a;
    switch (spec.name) {
        case FamilyName::W:
        case FamilyName::cdH:
        case FamilyName::cH:
        case FamilyName::AW:
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
            for (const Rat& r : p.lam) a.push_back(as_gq(r));
            break;
        case FamilyName::MP:
            a.push_back(as_gq(p.lam[0]));
            break;
        case FamilyName::cqJ: {
            const QBase& qb = p.qb();
            long ta = twice_rat(p.lam[0]), tb = twice_rat(p.lam[1]);
            a.push_back(GQ(qb.qpow4(ta + 1)));
            a.push_back(GQ(qb.qpow4(ta + 3)));
            a.push_back(GQ(-qb.qpow4(tb + 1)));
            a.push_back(GQ(-qb.qpow4(tb + 3)));
            break;
        }
        case FamilyName::cqL: {
            const QBase& qb = p.qb();
            long ta = twice_rat(p.lam[0]);
            a.push_back(GQ(qb.qpow4(ta + 1)));
            a.push_back(GQ(qb.qpow4(ta + 3)));
            break;
        }
        case FamilyName::cqH:
            break;
    }
    return a;
}

RingPoly eigen_poly(const FamilySpec& spec, long n, const ParamPoint& p) {
    if (n < 0 || n > kDegreeCap) throw CapExceeded();
    const GQ ix = GQ::i();

    switch (spec.name) {
        case FamilyName::W: {
            GQ a1 = as_gq(p.lam[0]);
            GQ A12 = as_gq(p.lam[0] + p.lam[1]);
            GQ A13 = as_gq(p.lam[0] + p.lam[2]);
            GQ A14 = as_gq(p.lam[0] + p.lam[3]);
            GQ b1 = as_gq(p.lam[0] + p.lam[1] + p.lam[2] + p.lam[3]);
            GQ pref = pochhammer(A12, n) * pochhammer(A13, n) * pochhammer(A14, n);
            return hyper_sum(n, pref, {GQ(n) + b1 - GQ(1)}, {lin(a1, ix), lin(a1, -ix)},
                             {A12, A13, A14}, GQ(1));
        }
        case FamilyName::cdH: {
            GQ a1 = as_gq(p.lam[0]);
            GQ A12 = as_gq(p.lam[0] + p.lam[1]);
            GQ A13 = as_gq(p.lam[0] + p.lam[2]);
            GQ pref = pochhammer(A12, n) * pochhammer(A13, n);
            return hyper_sum(n, pref, {}, {lin(a1, ix), lin(a1, -ix)}, {A12, A13}, GQ(1));
        }
        case FamilyName::cH: {
            // a3 = a1*, a4 = a2*; real samples keep everything rational.
            GQ a1 = as_gq(p.lam[0]), a2 = as_gq(p.lam[1]);
            GQ A13 = a1 + a1, A14 = a1 + a2;
            GQ b1 = GQ(2) * (a1 + a2);
            GQ pref = GQ::i().pow(n) * pochhammer(A13, n) * pochhammer(A14, n) /
                      pochhammer(GQ(1), n);
            return hyper_sum(n, pref, {GQ(n) + b1 - GQ(1)}, {lin(a1, ix)}, {A13, A14}, GQ(1));
        }
        case FamilyName::MP: {
            GQ a = as_gq(p.lam[0]);
            GQ pref = pochhammer(GQ(2) * a, n) / pochhammer(GQ(1), n) * p.eiphi.pow(n);
            GQ w = GQ(1) - p.eiphi.conj().pow(2);
            return hyper_sum(n, pref, {}, {lin(a, ix)}, {GQ(2) * a}, w);
        }
        case FamilyName::AW: {
            const QBase& qb = p.qb();
            const Rat q = qb.q();
            GQ a1 = as_gq(p.lam[0]);
            GQ A12 = as_gq(p.lam[0] * p.lam[1]);
            GQ A13 = as_gq(p.lam[0] * p.lam[2]);
            GQ A14 = as_gq(p.lam[0] * p.lam[3]);
            GQ b4 = as_gq(p.lam[0] * p.lam[1] * p.lam[2] * p.lam[3]);
            GQ pref = a1.pow(-n) * q_pochhammer(A12, q, n) * q_pochhammer(A13, q, n) *
                      q_pochhammer(A14, q, n);
            return q_hyper_sum(n, pref, qb, {b4 * GQ(qb.qpow4(4 * (n - 1)))}, {a1},
                               {A12, A13, A14}, GQ(q), 0, 0, 0);
        }
        case FamilyName::cdqH: {
            const QBase& qb = p.qb();
            const Rat q = qb.q();
            GQ a1 = as_gq(p.lam[0]);
            GQ A12 = as_gq(p.lam[0] * p.lam[1]);
            GQ A13 = as_gq(p.lam[0] * p.lam[2]);
            GQ pref = a1.pow(-n) * q_pochhammer(A12, q, n) * q_pochhammer(A13, q, n);
            return q_hyper_sum(n, pref, qb, {}, {a1}, {A12, A13}, GQ(q), 0, 0, 0);
        }
        case FamilyName::ASC: {
            const QBase& qb = p.qb();
            const Rat q = qb.q();
            GQ a1 = as_gq(p.lam[0]);
            GQ A12 = as_gq(p.lam[0] * p.lam[1]);
            GQ pref = a1.pow(-n) * q_pochhammer(A12, q, n);
            return q_hyper_sum(n, pref, qb, {}, {a1}, {A12}, GQ(q), 0, 0, 0);
        }
        case FamilyName::cbqH: {
            const QBase& qb = p.qb();
            GQ a1 = as_gq(p.lam[0]);
            return q_hyper_sum(n, a1.pow(-n), qb, {}, {a1}, {}, GQ(qb.q()), 0, 0, 0);
        }
        case FamilyName::cqH: {
            const QBase& qb = p.qb();
            // 2phi0 with correction exponent -1, argument q^n z^{-2}, times z^n.
            return q_hyper_sum(n, GQ(1), qb, {}, {}, {}, GQ(qb.qpow4(4 * n)), -2, -1, n);
        }
        case FamilyName::cqJ: {
            // The lower parameter q^{alpha+1} may hit a zero of (.;q)_k after the
            // twist (alpha < 0), so pair the prefactor with the denominator:
            // (q^{alpha+1};q)_n / (q^{alpha+1};q)_k = (q^{alpha+1+k};q)_{n-k}.
            const QBase& qb = p.qb();
            const Rat q = qb.q();
            long ta = twice_rat(p.lam[0]), tb = twice_rat(p.lam[1]);
            GQ a1(qb.qpow4(ta + 1));
            GQ l2(-qb.qpow4(ta + tb + 2));
            GQ l3(-qb.qpow4(ta + tb + 4));
            RingPoly sum = RingPoly::zero(Kind::Multiplicative);
            RingPoly polyfac = RingPoly::constant(Kind::Multiplicative, GQ(1));
            GQ qk(1);
            for (long k = 0; k <= n; ++k) {
                GQ c = q_pochhammer(GQ(qb.qpow4(2 * ta + 4 + 4 * k)), q, n - k);
                c *= q_pochhammer(GQ(qb.qpow4(-4 * n)), q, k);
                c *= q_pochhammer(GQ(qb.qpow4(4 * n + 2 * ta + 2 * tb + 4)), q, k);
                c /= q_pochhammer(l2, q, k) * q_pochhammer(l3, q, k) *
                     q_pochhammer(GQ(q), q, k);
                c *= GQ(q).pow(k);
                sum = sum + polyfac.scaled(c);
                polyfac = polyfac * one_minus(a1 * qk, 1) * one_minus(a1 * qk, -1);
                qk *= GQ(q);
            }
            return sum.scaled(GQ(1) / q_pochhammer(GQ(q), q, n));
        }
        case FamilyName::cqL: {
            const QBase& qb = p.qb();
            const Rat q = qb.q();
            long ta = twice_rat(p.lam[0]);
            GQ a1(qb.qpow4(ta + 1));
            RingPoly sum = RingPoly::zero(Kind::Multiplicative);
            RingPoly polyfac = RingPoly::constant(Kind::Multiplicative, GQ(1));
            GQ qk(1);
            for (long k = 0; k <= n; ++k) {
                GQ c = q_pochhammer(GQ(qb.qpow4(2 * ta + 4 + 4 * k)), q, n - k);
                c *= q_pochhammer(GQ(qb.qpow4(-4 * n)), q, k);
                c /= q_pochhammer(GQ(q), q, k);
                c *= GQ(q).pow(k);
                sum = sum + polyfac.scaled(c);
                polyfac = polyfac * one_minus(a1 * qk, 1) * one_minus(a1 * qk, -1);
                qk *= GQ(q);
            }
            return sum.scaled(GQ(1) / q_pochhammer(GQ(q), q, n));
        }
    }
    throw UnknownFamily("<eigen_poly>");
}

ParamPoint twist_params(const FamilySpec& spec, const ParamPoint& p) {
    ParamPoint t = p;
    switch (spec.name) {
        case FamilyName::W:
        case FamilyName::cdH:
        case FamilyName::cH:
            for (Rat& a : t.lam) a = 1 - a;
            break;
        case FamilyName::MP:
            t.lam[0] = 1 - t.lam[0];
            t.eiphi = -p.eiphi.conj();
            break;
        case FamilyName::AW: {
            Rat q = p.qb().q();
            for (Rat& a : t.lam) a = q / a;
            break;
        }
        case FamilyName::cqJ:
            t.lam[0] = -t.lam[0];
            t.lam[1] = -t.lam[1];
            break;
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH: {
            Rat q = p.qb().q();
            for (Rat& a : t.lam) a = a / q;
            t.qbase = p.qb().inverted();
            break;
        }
        case FamilyName::cqH:
            t.qbase = p.qb().inverted();
            break;
        case FamilyName::cqL:
            t.lam[0] = -t.lam[0];
            t.qbase = p.qb().inverted();
            break;
    }
    return t;
}

RingPoly pseudo_poly(const FamilySpec& spec, long v, const ParamPoint& p) {
    return eigen_poly(spec, v, twist_params(spec, p));
}

GQ energy(const FamilySpec& spec, long n, const ParamPoint& p) {
    switch (spec.name) {
        case FamilyName::W: {
            GQ b1 = as_gq(p.lam[0] + p.lam[1] + p.lam[2] + p.lam[3]);
            return GQ(n) * (GQ(n) + b1 - GQ(1));
        }
        case FamilyName::cdH:
            return GQ(n);
        case FamilyName::cH: {
            GQ b1 = GQ(2) * as_gq(p.lam[0] + p.lam[1]);
            return GQ(n) * (GQ(n) + b1 - GQ(1));
        }
        case FamilyName::MP:
            return GQ(2 * n) * GQ(p.eiphi.im());
        case FamilyName::AW: {
            const QBase& qb = p.qb();
            GQ b4 = as_gq(p.lam[0] * p.lam[1] * p.lam[2] * p.lam[3]);
            return (GQ(qb.qpow4(-4 * n)) - GQ(1)) * (GQ(1) - b4 * GQ(qb.qpow4(4 * (n - 1))));
        }
        case FamilyName::cqJ: {
            const QBase& qb = p.qb();
            long tab = twice_rat(p.lam[0]) + twice_rat(p.lam[1]);
            return (GQ(qb.qpow4(-4 * n)) - GQ(1)) *
                   (GQ(1) - GQ(qb.qpow4(4 * n + 2 * tab + 4)));
        }
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
        case FamilyName::cqH:
        case FamilyName::cqL:
            return GQ(p.qb().qpow4(-4 * n)) - GQ(1);
    }
    throw UnknownFamily("<energy>");
}

std::pair<GQ, GQ> twist_constants(const FamilySpec& spec, const ParamPoint& p) {
    switch (spec.name) {
        case FamilyName::W: {
            GQ b1 = as_gq(p.lam[0] + p.lam[1] + p.lam[2] + p.lam[3]);
            return {GQ(1), -(b1 - GQ(2))};
        }
        case FamilyName::cdH:
            return {GQ(-1), GQ(-1)};
        case FamilyName::cH: {
            GQ b1 = GQ(2) * as_gq(p.lam[0] + p.lam[1]);
            return {GQ(1), GQ(2) - b1};
        }
        case FamilyName::MP:
            return {GQ(-1), GQ(-2) * GQ(p.eiphi.im())};
        case FamilyName::AW: {
            const QBase& qb = p.qb();
            GQ b4q2 = as_gq(p.lam[0] * p.lam[1] * p.lam[2] * p.lam[3]) * GQ(qb.qpow4(-8));
            return {b4q2, -(GQ(1) - GQ(qb.q())) * (GQ(1) - b4q2)};
        }
        case FamilyName::cqJ: {
            const QBase& qb = p.qb();
            long tab = twice_rat(p.lam[0]) + twice_rat(p.lam[1]);
            GQ qab(qb.qpow4(2 * tab));
            return {qab, (GQ(qb.q()) - GQ(1)) * (GQ(1) - qab)};
        }
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
        case FamilyName::cqH:
        case FamilyName::cqL: {
            GQ q(p.qb().q());
            return {q, q - GQ(1)};
        }
    }
    throw UnknownFamily("<twist_constants>");
}

RatFunc potential(const FamilySpec& spec, const ParamPoint& p, bool twisted) {
    if (twisted) {
        ParamPoint tp = twist_params(spec, p);
        RatFunc vt = potential(spec, tp, false);
        return spec.group_b ? vt.star() : vt;
    }
    const GQ ii = GQ::i();
    switch (spec.name) {
        case FamilyName::W:
        case FamilyName::cdH: {
            RingPoly num = RingPoly::constant(Kind::Additive, GQ(1));
            for (const Rat& a : p.lam) num = num * lin(as_gq(a), ii);
            RingPoly twoix = RingPoly::monomial(Kind::Additive, 1, GQ(2) * ii);
            RingPoly den = twoix * (twoix + RingPoly::constant(Kind::Additive, GQ(1)));
            return RatFunc(num, den);
        }
        case FamilyName::cH: {
            RingPoly num = lin(as_gq(p.lam[0]), ii) * lin(as_gq(p.lam[1]), ii);
            return RatFunc(num);
        }
        case FamilyName::MP:
            return RatFunc(lin(as_gq(p.lam[0]), ii).scaled(ii * p.eiphi.conj()));
        case FamilyName::AW:
        case FamilyName::cqJ:
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
        case FamilyName::cqH:
        case FamilyName::cqL: {
            const QBase& qb = p.qb();
            RingPoly num = RingPoly::constant(Kind::Multiplicative, GQ(1));
            for (const GQ& a : series_params(spec, p)) num = num * one_minus(a, 1);
            RingPoly z2 = RingPoly::monomial(Kind::Multiplicative, 2, GQ(1));
            RingPoly one = RingPoly::constant(Kind::Multiplicative, GQ(1));
            RingPoly den = (one - z2) * (one - z2.scaled(GQ(qb.q())));
            return RatFunc(num, den);
        }
    }
    throw UnknownFamily("<potential>");
}

ParamPoint shift_params(const FamilySpec& spec, const ParamPoint& p, long k) {
    ParamPoint s = p;
    switch (spec.name) {
        case FamilyName::W:
        case FamilyName::cdH:
        case FamilyName::cH:
        case FamilyName::MP:
        case FamilyName::cqJ:
        case FamilyName::cqL:
        case FamilyName::cqH:
            for (size_t j = 0; j < s.lam.size(); ++j)
                s.lam[j] += k * spec.delta[j];
            break;
        case FamilyName::AW:
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH: {
            // a_j -> a_j q^{k/2} = a_j s^{2k}
            Rat f = p.qb().qpow4(2 * k);
            for (Rat& a : s.lam) a *= f;
            break;
        }
    }
    return s;
}

RingPoly r_factor(const FamilySpec& spec, long j, long M, const ParamPoint& p) {
    if (j < 1 || j > M + 1) throw std::out_of_range("r_factor: j out of range");
    const GQ ii = GQ::i();

    if (spec.kind == Kind::Additive) {
        RingPoly acc = RingPoly::constant(Kind::Additive, GQ(1));
        if (spec.name == FamilyName::MP)
            acc = acc.scaled((p.eiphi * GQ(Rat(0), Rat(-1))).pow(M + 2 - 2 * j));
        for (const GQ& a : series_params(spec, p)) {
            GQ base = a - GQ(M, 2);
            for (long t = 0; t < j - 1; ++t) acc = acc * lin(base + GQ(t), ii);
            for (long t = 0; t < M + 1 - j; ++t) acc = acc * lin(base + GQ(t), -ii);
        }
        if (spec.name == FamilyName::cH) {
            // conjugate pair: (a_k - M/2 + ix)_{j-1} (a_k* - M/2 - ix)_{M+1-j};
            // real samples make a* = a, which the loop above already produced.
        }
        return acc;
    }

    const QBase& qb = p.qb();
    RingPoly acc = RingPoly::monomial(Kind::Multiplicative, 2 * (M + 2 - 2 * j), GQ(1));
    const GQ qmh(qb.qpow4(-2 * M));  // q^{-M/2}

    // nu(x_j; lambda) / nu(x; lambda - M delta) carries j-dependent q-power
    // constants on top of the z-power and q-Pochhammer structure. They come
    // out of rewriting the shifted infinite products, and vanish for M <= 1.
    if (spec.group_b) {
        long m = M + 2 - 2 * j;  // nu = phi_0^2 / varphi telescopes to q^{-m^2/2}
        acc = acc.scaled(GQ(qb.qpow4(-2 * m * m)));
    } else {
        long gj = -((M + 1 - j) * (M - j) + (j - 1) * (j - 2)) / 2;  // q^{2 gj}
        acc = acc.scaled(GQ(qb.qpow4(8 * gj)));
    }

    if (spec.name == FamilyName::cqJ || spec.name == FamilyName::cqL) {
        const GQ sh(qb.qhalf());
        std::vector<GQ> as = series_params(spec, p);
        std::vector<GQ> picks = {as[0]};
        if (spec.name == FamilyName::cqJ) picks.push_back(as[2]);
        for (const GQ& a : picks) {
            GQ u = a * qmh;
            for (long t = 0; t < 2 * (j - 1); ++t) acc = acc * one_minus(u * sh.pow(t), 1);
            for (long t = 0; t < 2 * (M + 1 - j); ++t) acc = acc * one_minus(u * sh.pow(t), -1);
        }
        return acc;
    }

    const GQ qq(qb.q());
    for (const GQ& a : series_params(spec, p)) {
        GQ u = a * qmh;
        for (long t = 0; t < j - 1; ++t) acc = acc * one_minus(u * qq.pow(t), 1);
        for (long t = 0; t < M + 1 - j; ++t) acc = acc * one_minus(u * qq.pow(t), -1);
    }
    return acc;
}

GQ fn_factor(const FamilySpec& spec, long n, const ParamPoint& p) {
    switch (spec.name) {
        case FamilyName::W: {
            GQ b1 = as_gq(p.lam[0] + p.lam[1] + p.lam[2] + p.lam[3]);
            return -GQ(n) * (GQ(n) + b1 - GQ(1));
        }
        case FamilyName::cdH:
            return GQ(-n);
        case FamilyName::cH: {
            GQ b1 = GQ(2) * as_gq(p.lam[0] + p.lam[1]);
            return GQ(n) + b1 - GQ(1);
        }
        case FamilyName::MP:
            return GQ(2) * GQ(p.eiphi.im());
        case FamilyName::AW:
            return GQ(p.qb().qpow4(2 * n)) * energy(spec, n, p);
        case FamilyName::cqJ: {
            const QBase& qb = p.qb();
            long ta = twice_rat(p.lam[0]);
            long tab = ta + twice_rat(p.lam[1]);
            GQ denom = (GQ(1) + GQ(qb.qpow4(tab + 2))) * (GQ(1) + GQ(qb.qpow4(tab + 4)));
            return GQ(qb.qpow4(ta + 3)) * GQ(qb.qpow4(-4 * n)) *
                   (GQ(1) - GQ(qb.qpow4(4 * n + 2 * tab + 4))) / denom;
        }
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
        case FamilyName::cqH:
            return GQ(p.qb().qpow4(2 * n)) * energy(spec, n, p);
        case FamilyName::cqL: {
            const QBase& qb = p.qb();
            long ta = twice_rat(p.lam[0]);
            return GQ(qb.qpow4(ta + 3)) * GQ(qb.qpow4(-4 * n));
        }
    }
    throw UnknownFamily("<fn_factor>");
}

GQ bn_factor(const FamilySpec& spec, long n, const ParamPoint& p) {
    switch (spec.name) {
        case FamilyName::W:
        case FamilyName::cdH:
            return GQ(-1);
        case FamilyName::cH:
        case FamilyName::MP:
            return GQ(n);
        case FamilyName::AW:
        case FamilyName::cdqH:
        case FamilyName::ASC:
        case FamilyName::cbqH:
        case FamilyName::cqH:
            return GQ(p.qb().qpow4(-2 * n));
        case FamilyName::cqJ: {
            const QBase& qb = p.qb();
            long ta = twice_rat(p.lam[0]);
            long tab = ta + twice_rat(p.lam[1]);
            GQ fac = (GQ(1) + GQ(qb.qpow4(tab + 2))) * (GQ(1) + GQ(qb.qpow4(tab + 4)));
            return GQ(qb.qpow4(-(ta + 3))) * GQ(qb.qpow4(4 * n)) *
                   (GQ(qb.qpow4(-4 * n)) - GQ(1)) * fac;
        }
        case FamilyName::cqL: {
            const QBase& qb = p.qb();
            long ta = twice_rat(p.lam[0]);
            return GQ(qb.qpow4(-(ta + 3))) * GQ(qb.qpow4(4 * n)) *
                   (GQ(qb.qpow4(-4 * n)) - GQ(1));
        }
    }
    throw UnknownFamily("<bn_factor>");
}

RingPoly phi_poly(const FamilySpec& spec) {
    switch (spec.eta) {
        case EtaKind::XSquared:
            return RingPoly::monomial(Kind::Additive, 1, GQ(2));
        case EtaKind::X:
            return RingPoly::constant(Kind::Additive, GQ(1));
        case EtaKind::CosX:
            // 2 sin x = -i z + i z^{-1}
            return RingPoly::monomial(Kind::Multiplicative, 1, -GQ::i()) +
                   RingPoly::monomial(Kind::Multiplicative, -1, GQ::i());
    }
    throw UnknownFamily("<phi_poly>");
}

Rat kappa(const FamilySpec& spec, const ParamPoint& p) {
    if (spec.kind == Kind::Additive) return Rat(1);
    return p.qb().qpow4(-4);
}

}  // namespace casoratia
