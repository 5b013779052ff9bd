#include "casoratia/casoratian.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace casoratia {

namespace {

RingPoly det_cofactor(const std::vector<std::vector<RingPoly>>& m, Kind kind) {
    const size_t n = m.size();
    if (n == 0) return RingPoly::constant(kind, GQ(1));
    if (n == 1) return m[0][0];
    RingPoly det = RingPoly::zero(kind);
    for (size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<RingPoly>> minor;
        minor.reserve(n - 1);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<RingPoly> row(m[r].begin() + 1, m[r].end());
            minor.push_back(std::move(row));
        }
        RingPoly term = m[i][0] * det_cofactor(minor, kind);
        det = (i % 2 == 0) ? det + term : det - term;
    }
    return det;
}

RingPoly det_bareiss(std::vector<std::vector<RingPoly>> m, Kind kind) {
    const size_t n = m.size();
    if (n == 0) return RingPoly::constant(kind, GQ(1));
    int sign = 1;
    RingPoly prev = RingPoly::constant(kind, GQ(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = n;
            for (size_t i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { swap_row = i; break; }
            if (swap_row == n) return RingPoly::zero(kind);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    RingPoly det = m[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

// Rows of the Casoratian-style determinant: column entries pre-shifted to
// the grid x_j^{(n)}, j = 1..n (twice the shift constant is n+1-2j).
std::vector<std::vector<RingPoly>> casoratian_matrix(const std::vector<RingPoly>& fs,
                                                     const QBase* qb) {
    const size_t n = fs.size();
    std::vector<std::vector<RingPoly>> m(n, std::vector<RingPoly>());
    for (size_t j = 1; j <= n; ++j) {
        long twice_c = static_cast<long>(n) + 1 - 2 * static_cast<long>(j);
        m[j - 1].reserve(n);
        for (size_t k = 0; k < n; ++k) m[j - 1].push_back(fs[k].shifted(twice_c, qb));
    }
    return m;
}

void check_index_set(const IndexSet& D) {
    std::set<long> seen;
    for (long d : D) {
        if (d < 0) throw std::invalid_argument("index set entries must be non-negative");
        if (!seen.insert(d).second) throw std::invalid_argument("index set entries must be distinct");
    }
}

GQ half_powers_prefactor(long n) { return GQ::i().pow(n * (n - 1) / 2); }

}  // namespace

RingPoly poly_det(std::vector<std::vector<RingPoly>> m, Kind kind, DetMethod method) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("poly_det: matrix not square");
    if (method == DetMethod::Auto)
        method = m.size() <= 3 ? DetMethod::Cofactor : DetMethod::Bareiss;
    return method == DetMethod::Cofactor ? det_cofactor(m, kind) : det_bareiss(std::move(m), kind);
}

RingPoly casoratian(const std::vector<RingPoly>& fs, const QBase* qb, DetMethod method) {
    if (fs.empty()) return RingPoly::constant(Kind::Additive, GQ(1));
    const Kind kind = fs[0].kind();
    for (const RingPoly& f : fs)
        if (f.kind() != kind) throw KindMismatch();
    RingPoly det = poly_det(casoratian_matrix(fs, qb), kind, method);
    return det.scaled(half_powers_prefactor(static_cast<long>(fs.size())));
}

RingPoly varphi_m(const FamilySpec& spec, long M, const QBase* qb) {
    const RingPoly phi = phi_poly(spec);
    RingPoly acc = RingPoly::constant(spec.kind, GQ(1));
    if (M < 2) return acc;
    for (long e = 0; e < M / 2; ++e) acc = acc * phi;
    for (long k = 1; k <= M - 2; ++k) {
        RingPoly pair = phi.shifted(-k, qb) * phi.shifted(k, qb);
        for (long e = 0; e < (M - k) / 2; ++e) acc = acc * pair;
    }
    return acc;
}

RingPoly xibar(const FamilySpec& spec, const IndexSet& D, const ParamPoint& p,
               const QBase* shift_qb) {
    check_index_set(D);
    std::vector<RingPoly> fs;
    fs.reserve(D.size());
    for (long d : D) fs.push_back(eigen_poly(spec, d, p));
    const QBase* qb = shift_qb ? shift_qb : (p.qbase ? &*p.qbase : nullptr);
    RingPoly w = casoratian(fs, qb);
    if (D.empty()) w = RingPoly::constant(spec.kind, GQ(1));
    return exact_div(w, varphi_m(spec, static_cast<long>(D.size()), qb));
}

RingPoly xi(const FamilySpec& spec, const IndexSet& D, const ParamPoint& p) {
    check_index_set(D);
    std::vector<RingPoly> fs;
    fs.reserve(D.size());
    for (long d : D) fs.push_back(pseudo_poly(spec, d, p));
    const QBase* qb = p.qbase ? &*p.qbase : nullptr;
    RingPoly w = casoratian(fs, qb);
    if (D.empty()) w = RingPoly::constant(spec.kind, GQ(1));
    return exact_div(w, varphi_m(spec, static_cast<long>(D.size()), qb));
}

RingPoly p_dn(const FamilySpec& spec, const IndexSet& D, long n, const ParamPoint& p) {
    check_index_set(D);
    const long M = static_cast<long>(D.size());
    const QBase* qb = p.qbase ? &*p.qbase : nullptr;
    const RingPoly pn = eigen_poly(spec, n, p);

    std::vector<std::vector<RingPoly>> m(static_cast<size_t>(M + 1));
    std::vector<RingPoly> xis;
    xis.reserve(D.size());
    for (long d : D) xis.push_back(pseudo_poly(spec, d, p));
    for (long j = 1; j <= M + 1; ++j) {
        long twice_c = M + 2 - 2 * j;
        auto& row = m[static_cast<size_t>(j - 1)];
        row.reserve(static_cast<size_t>(M + 1));
        for (const RingPoly& f : xis) row.push_back(f.shifted(twice_c, qb));
        row.push_back(r_factor(spec, j, M, p) * pn.shifted(twice_c, qb));
    }
    RingPoly det = poly_det(std::move(m), spec.kind).scaled(half_powers_prefactor(M + 1));
    return exact_div(det, varphi_m(spec, M + 1, qb));
}

long ell_d(const IndexSet& D) {
    long sum = 0;
    for (long d : D) sum += d;
    const long M = static_cast<long>(D.size());
    return sum - M * (M - 1) / 2;
}

DualData dualize(const FamilySpec& spec, const IndexSet& D, long N, const ParamPoint& p) {
    check_index_set(D);
    if (!D.empty() && N < *std::max_element(D.begin(), D.end()))
        throw std::invalid_argument("dualize: N must be >= max(D)");
    std::set<long> removed;
    for (long d : D) removed.insert(N - d);
    DualData out;
    for (long e = 0; e <= N; ++e)
        if (!removed.count(e)) out.dbar.push_back(e);
    out.lambda_bar = shift_params(spec, p, -(N + 1));
    out.mu = removed.empty() ? 0 : *removed.begin();
    return out;
}

bool krein_adler_admissible(const IndexSet& dbar) {
    if (dbar.empty()) return true;
    long top = *std::max_element(dbar.begin(), dbar.end());
    for (long n = 0; n <= top + 1; ++n) {
        int sign = 1;
        for (long e : dbar) {
            if (n == e) { sign = 0; break; }
            if (n < e) sign = -sign;
        }
        if (sign < 0) return false;
    }
    return true;
}

RatFunc deformed_potential_pv(const FamilySpec& spec, const IndexSet& D, const ParamPoint& p) {
    check_index_set(D);
    if (D.empty()) throw std::invalid_argument("deformed_potential_pv: D must be non-empty");
    const long M = static_cast<long>(D.size());
    const QBase* qb = p.qbase ? &*p.qbase : nullptr;

    IndexSet dprime(D.begin(), D.end());
    std::sort(dprime.begin(), dprime.end());
    dprime.pop_back();

    RatFunc v = potential(spec, shift_params(spec, p, -M)).star().shifted(-1, qb);
    const RingPoly xd = xi(spec, D, p);
    const RingPoly xdp = xi(spec, dprime, p);
    RatFunc ratio1(xdp.shifted(1, qb), xdp.shifted(-1, qb));
    RatFunc ratio2(xd.shifted(-2, qb), xd);
    GQ kap = GQ(kappa(spec, p)).pow(-M);
    return v.scaled(kap) * ratio1 * ratio2;
}

RatFunc deformed_potential_ka(const FamilySpec& spec, const IndexSet& D, long N,
                              const ParamPoint& p) {
    check_index_set(D);
    if (D.empty()) throw std::invalid_argument("deformed_potential_ka: D must be non-empty");
    const long M = static_cast<long>(D.size());
    const QBase* qb = p.qbase ? &*p.qbase : nullptr;

    DualData dual = dualize(spec, D, N, p);
    IndexSet dbar_prime = dual.dbar;
    dbar_prime.push_back(dual.mu);
    std::sort(dbar_prime.begin(), dbar_prime.end());

    RatFunc v = potential(spec, shift_params(spec, p, -M));
    const RingPoly xb = xibar(spec, dual.dbar, dual.lambda_bar);
    const RingPoly xbp = xibar(spec, dbar_prime, dual.lambda_bar);
    RatFunc ratio1(xbp.shifted(-2, qb), xbp);
    RatFunc ratio2(xb.shifted(1, qb), xb.shifted(-1, qb));
    GQ kap = GQ(kappa(spec, p)).pow(N + 1 - M);
    return v.scaled(kap) * ratio1 * ratio2;
}

}  // namespace casoratia
