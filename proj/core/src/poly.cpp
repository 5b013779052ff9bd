#include "casoratia/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace casoratia {

void RingPoly::trim() {
    size_t front = 0;
    while (front < coeffs_.size() && coeffs_[front].is_zero()) ++front;
    if (front == coeffs_.size()) {
        coeffs_.clear();
        lo_ = 0;
        return;
    }
    size_t back = coeffs_.size();
    while (back > front && coeffs_[back - 1].is_zero()) --back;
    if (front > 0 || back < coeffs_.size()) {
        coeffs_ = std::vector<GQ>(coeffs_.begin() + static_cast<long>(front),
                                  coeffs_.begin() + static_cast<long>(back));
        lo_ += static_cast<long>(front);
    }
}

RingPoly RingPoly::constant(Kind kind, GQ c) {
    RingPoly p(kind);
    if (!c.is_zero()) {
        p.lo_ = 0;
        p.coeffs_ = {std::move(c)};
    }
    return p;
}

RingPoly RingPoly::monomial(Kind kind, long deg, GQ c) {
    if (kind == Kind::Additive && deg < 0)
        throw std::logic_error("additive kind has no negative degrees");
    RingPoly p(kind);
    if (!c.is_zero()) {
        p.lo_ = deg;
        p.coeffs_ = {std::move(c)};
    }
    return p;
}

RingPoly RingPoly::operator-() const {
    RingPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RingPoly operator+(const RingPoly& a, const RingPoly& b) {
    if (a.kind_ != b.kind_) throw KindMismatch();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long lo = std::min(a.lo_, b.lo_);
    long hi = std::max(a.hi_deg(), b.hi_deg());
    RingPoly r(a.kind_);
    r.lo_ = lo;
    r.coeffs_.resize(static_cast<size_t>(hi - lo + 1), GQ(0));
    for (long d = lo; d <= hi; ++d)
        r.coeffs_[static_cast<size_t>(d - lo)] = a.coeff(d) + b.coeff(d);
    r.trim();
    return r;
}

RingPoly operator-(const RingPoly& a, const RingPoly& b) { return a + (-b); }

RingPoly operator*(const RingPoly& a, const RingPoly& b) {
    if (a.kind_ != b.kind_) throw KindMismatch();
    if (a.is_zero() || b.is_zero()) return RingPoly::zero(a.kind_);
    RingPoly r(a.kind_);
    r.lo_ = a.lo_ + b.lo_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, GQ(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.trim();
    return r;
}

RingPoly RingPoly::scaled(const GQ& c) const {
    if (c.is_zero()) return RingPoly::zero(kind_);
    RingPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

RingPoly RingPoly::pow(long k) const {
    if (k < 0) throw std::logic_error("RingPoly::pow: negative exponent");
    RingPoly acc = RingPoly::constant(kind_, GQ(1));
    for (long j = 0; j < k; ++j) acc = acc * *this;
    return acc;
}

RingPoly RingPoly::shifted(long twice_c, const QBase* qb) const {
    if (twice_c == 0 || is_zero()) return *this;
    if (kind_ == Kind::Additive) {
        // Horner expansion of p(x + i c).
        GQ d(Rat(0), Rat(twice_c, 2));
        RingPoly x_plus_d = RingPoly::variable(kind_) + RingPoly::constant(kind_, d);
        RingPoly res = RingPoly::zero(kind_);
        for (long deg = hi_deg(); deg >= 0; --deg)
            res = res * x_plus_d + RingPoly::constant(kind_, coeff(deg));
        return res;
    }
    if (!qb) throw MissingQBase();
    // z -> q^{-c} z scales the degree-k coefficient by q^{-ck}.
    Rat f = qb->qpow_half(-twice_c);
    RingPoly r = *this;
    Rat fk = 1;
    for (long k = 1; k <= r.lo_; ++k) fk *= f;
    for (long k = -1; k >= r.lo_; --k) fk /= f;
    for (auto& c : r.coeffs_) {
        c *= GQ(fk);
        fk *= f;
    }
    // rescaling by nonzero constants cannot create zero coefficients
    return r;
}

RingPoly RingPoly::star() const {
    RingPoly r(kind_);
    if (is_zero()) return r;
    if (kind_ == Kind::Additive) {
        r = *this;
        for (auto& c : r.coeffs_) c = c.conj();
        return r;
    }
    r.lo_ = -hi_deg();
    r.coeffs_.resize(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k)
        r.coeffs_[coeffs_.size() - 1 - k] = coeffs_[k].conj();
    return r;
}

GQ RingPoly::eval(const GQ& v) const {
    GQ acc(0);
    for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * v + coeffs_[k];
    if (lo_ != 0) acc *= v.pow(lo_);
    return acc;
}

RingPoly exact_div(const RingPoly& p, const RingPoly& d) {
    if (p.kind_ != d.kind_) throw KindMismatch();
    if (d.is_zero()) throw DivisionByZero();
    if (p.is_zero()) return RingPoly::zero(p.kind_);
    long qlo = p.lo_ - d.lo_;
    if (p.kind_ == Kind::Additive && qlo < 0)
        throw NotDivisible("trailing degree of divisor exceeds dividend");
    // ordinary long division on the stored coefficient windows
    std::vector<GQ> rem = p.coeffs_;
    long nq = static_cast<long>(p.coeffs_.size()) - static_cast<long>(d.coeffs_.size()) + 1;
    if (nq <= 0) throw NotDivisible("divisor degree exceeds dividend");
    std::vector<GQ> quot(static_cast<size_t>(nq), GQ(0));
    const GQ lead = d.coeffs_.back();
    for (long k = nq - 1; k >= 0; --k) {
        GQ c = rem[static_cast<size_t>(k) + d.coeffs_.size() - 1] / lead;
        if (c.is_zero()) continue;
        quot[static_cast<size_t>(k)] = c;
        for (size_t j = 0; j < d.coeffs_.size(); ++j)
            rem[static_cast<size_t>(k) + j] -= c * d.coeffs_[j];
    }
    for (const auto& c : rem)
        if (!c.is_zero()) throw NotDivisible("nonzero remainder");
    RingPoly q(p.kind_);
    q.lo_ = qlo;
    q.coeffs_ = std::move(quot);
    q.trim();
    return q;
}

RingPoly poly_gcd(const RingPoly& a, const RingPoly& b) {
    if (a.kind_ != b.kind_) throw KindMismatch();
    Kind kind = a.kind_;
    // work on the stored windows as ordinary polynomials (lo normalized away)
    auto window = [](const RingPoly& p) { return p.coeffs_; };
    std::vector<GQ> u = window(a), v = window(b);
    auto trimv = [](std::vector<GQ>& w) {
        while (!w.empty() && w.back().is_zero()) w.pop_back();
    };
    trimv(u);
    trimv(v);
    while (!v.empty()) {
        // u <- u mod v
        const GQ lead = v.back();
        while (u.size() >= v.size()) {
            GQ c = u.back() / lead;
            size_t off = u.size() - v.size();
            for (size_t j = 0; j + 1 < v.size(); ++j) u[off + j] -= c * v[j];
            u.pop_back();
            trimv(u);
        }
        std::swap(u, v);
    }
    RingPoly g(kind);
    if (u.empty()) return g;
    GQ inv = u.back().inv();
    for (auto& c : u) c *= inv;
    g.lo_ = 0;
    g.coeffs_ = std::move(u);
    g.trim();
    if (kind == Kind::Additive) {
        // common x^k factor survives only if both inputs carry it
        long xlo = a.is_zero() ? b.lo_ : (b.is_zero() ? a.lo_ : std::min(a.lo_, b.lo_));
        g = g * RingPoly::monomial(kind, xlo, GQ(1));
    }
    return g;
}

EtaPoly to_eta_basis(const RingPoly& p, EtaKind eta) {
    if (p.is_zero()) return EtaPoly();
    switch (eta) {
        case EtaKind::X: {
            if (p.kind() != Kind::Additive) throw NotInEtaImage("eta = x needs additive kind");
            std::vector<GQ> c(static_cast<size_t>(p.hi_deg()) + 1);
            for (long d = 0; d <= p.hi_deg(); ++d) c[static_cast<size_t>(d)] = p.coeff(d);
            return EtaPoly(std::move(c));
        }
        case EtaKind::XSquared: {
            if (p.kind() != Kind::Additive) throw NotInEtaImage("eta = x^2 needs additive kind");
            for (long d = 1; d <= p.hi_deg(); d += 2)
                if (!p.coeff(d).is_zero()) throw NotInEtaImage("odd term present");
            std::vector<GQ> c(static_cast<size_t>(p.hi_deg() / 2) + 1);
            for (long d = 0; d <= p.hi_deg(); d += 2) c[static_cast<size_t>(d / 2)] = p.coeff(d);
            return EtaPoly(std::move(c));
        }
        case EtaKind::CosX: {
            if (p.kind() != Kind::Multiplicative) throw NotInEtaImage("eta = cos x needs multiplicative kind");
            long K = std::max(std::abs(p.lo_deg()), std::abs(p.hi_deg()));
            for (long k = 1; k <= K; ++k)
                if (p.coeff(k) != p.coeff(-k)) throw NotInEtaImage("asymmetric Laurent part present");
            // p = a_0 + sum_{k>=1} a_k (z^k + z^{-k}) = a_0 + sum a_k * 2 T_k(eta)
            std::vector<GQ> acc(static_cast<size_t>(K) + 1, GQ(0));
            acc[0] = p.coeff(0);
            // Chebyshev T_k by recurrence
            std::vector<GQ> tprev = {GQ(1)};       // T_0
            std::vector<GQ> tcur = {GQ(0), GQ(1)}; // T_1
            for (long k = 1; k <= K; ++k) {
                GQ a2 = p.coeff(k) * GQ(2);
                if (!a2.is_zero())
                    for (size_t j = 0; j < tcur.size(); ++j) acc[j] += a2 * tcur[j];
                if (k < K) {
                    // T_{k+1} = 2 eta T_k - T_{k-1}
                    std::vector<GQ> tnext(tcur.size() + 1, GQ(0));
                    for (size_t j = 0; j < tcur.size(); ++j) tnext[j + 1] = tcur[j] * GQ(2);
                    for (size_t j = 0; j < tprev.size(); ++j) tnext[j] -= tprev[j];
                    tprev = std::move(tcur);
                    tcur = std::move(tnext);
                }
            }
            return EtaPoly(std::move(acc));
        }
    }
    throw std::logic_error("unreachable");
}

RingPoly eta_embed(const EtaPoly& p, Kind kind, EtaKind eta) {
    RingPoly eta_poly(kind);
    switch (eta) {
        case EtaKind::X:
            eta_poly = RingPoly::variable(Kind::Additive);
            break;
        case EtaKind::XSquared:
            eta_poly = RingPoly::monomial(Kind::Additive, 2, GQ(1));
            break;
        case EtaKind::CosX:
            eta_poly = RingPoly::monomial(Kind::Multiplicative, 1, GQ(1, 2)) +
                       RingPoly::monomial(Kind::Multiplicative, -1, GQ(1, 2));
            break;
    }
    if (eta_poly.kind() != kind) throw KindMismatch();
    RingPoly res = RingPoly::zero(kind);
    for (long k = p.degree(); k >= 0; --k)
        res = res * eta_poly + RingPoly::constant(kind, p.coeff(k));
    return res;
}

Proportionality proportional(const RingPoly& p, const RingPoly& q) {
    Proportionality r;
    if (p.is_zero() && q.is_zero()) {
        r.verdict = true;  // degenerate convention; callers assert nonzero
        return r;
    }
    if (p.is_zero() || q.is_zero()) return r;
    if (p.kind() != q.kind() || p.lo_deg() != q.lo_deg() || p.hi_deg() != q.hi_deg()) return r;
    GQ c = p.trailing() / q.trailing();
    if (p == q.scaled(c)) {
        r.verdict = true;
        r.ratio = c;
    }
    return r;
}

Proportionality proportional(const EtaPoly& p, const EtaPoly& q) {
    Proportionality r;
    if (p.is_zero() && q.is_zero()) {
        r.verdict = true;
        return r;
    }
    if (p.is_zero() || q.is_zero()) return r;
    if (p.degree() != q.degree()) return r;
    long k0 = 0;
    while (q.coeff(k0).is_zero()) {
        if (!p.coeff(k0).is_zero()) return r;
        ++k0;
    }
    GQ c = p.coeff(k0) / q.coeff(k0);
    for (long k = 0; k <= p.degree(); ++k)
        if (p.coeff(k) != c * q.coeff(k)) return r;
    r.verdict = true;
    r.ratio = c;
    return r;
}

RatFunc::RatFunc(RingPoly num, RingPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.kind() != den_.kind()) throw KindMismatch();
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = RingPoly::constant(kind(), GQ(1));
        return;
    }
    RingPoly g = poly_gcd(num_, den_);
    if (!g.is_constant() || g.lo_deg() != 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    if (kind() == Kind::Multiplicative && den_.lo_deg() != 0) {
        // pull the common z-power into the numerator
        long s = den_.lo_deg();
        num_ = num_ * RingPoly::monomial(kind(), -s, GQ(1));
        den_ = den_ * RingPoly::monomial(kind(), -s, GQ(1));
    }
    GQ unit = (kind() == Kind::Additive) ? den_.leading() : den_.trailing();
    if (unit != GQ(1)) {
        GQ inv = unit.inv();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero();
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RingPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long d = hi_deg(); d >= lo_; --d) {
        GQ c = coeff(d);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (d == 0) {
            os << c.str();
        } else {
            if (c != GQ(1)) os << "(" << c.str() << ")*";
            os << var;
            if (d != 1) os << "^" << d;
        }
    }
    return os.str();
}

std::string EtaPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        GQ c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << c.str();
        } else {
            if (c != GQ(1)) os << "(" << c.str() << ")*";
            os << "eta";
            if (k != 1) os << "^" << k;
        }
    }
    return os.str();
}

std::string RatFunc::str(const std::string& var) const {
    if (is_polynomial()) {
        if (den_ == RingPoly::constant(kind(), GQ(1))) return num_.str(var);
    }
    return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

}  // namespace casoratia
