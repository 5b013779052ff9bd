#pragma once

/**
 * @file poly.hpp
 * @brief Polynomial and Laurent-polynomial rings over GQ, plus rational
 *        functions and the eta-basis conversion.
 *
 * Two ring kinds share one representation:
 *   Additive        -- polynomials in x (Wilson side), degrees >= 0
 *   Multiplicative  -- Laurent polynomials in z = e^{ix} (Askey-Wilson side)
 *
 * The imaginary shift x -> x + i*c*gamma is a substitution in both rings:
 * x -> x + i*c for the additive kind, z -> q^{-c} z for the multiplicative
 * kind (gamma = log q < 0, e^{i(x+ic gamma)} = z q^{-c}).
 */

#include "casoratia/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace casoratia {

enum class Kind { Additive, Multiplicative };

struct KindMismatch : std::logic_error {
    KindMismatch() : std::logic_error("ring kind mismatch") {}
};
struct MissingQBase : std::logic_error {
    MissingQBase() : std::logic_error("multiplicative shift requires a QBase") {}
};
struct NotDivisible : std::runtime_error {
    explicit NotDivisible(std::string what) : std::runtime_error(std::move(what)) {}
};
struct NotInEtaImage : std::runtime_error {
    explicit NotInEtaImage(std::string what) : std::runtime_error(std::move(what)) {}
};

/// Dense (Laurent) polynomial; coeffs_[k] is the coefficient of degree lo_+k.
/// Canonical form: leading and trailing stored coefficients nonzero, zero
/// polynomial stored as the empty vector with lo_ = 0.
class RingPoly {
public:
    explicit RingPoly(Kind kind = Kind::Additive) : kind_(kind), lo_(0) {}

    static RingPoly zero(Kind kind) { return RingPoly(kind); }
    static RingPoly constant(Kind kind, GQ c);
    static RingPoly monomial(Kind kind, long deg, GQ c);
    /// x (additive) or z (multiplicative).
    static RingPoly variable(Kind kind) { return monomial(kind, 1, GQ(1)); }

    Kind kind() const { return kind_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.empty() || (coeffs_.size() == 1 && lo_ == 0); }

    long lo_deg() const { return lo_; }
    long hi_deg() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }

    GQ coeff(long deg) const {
        if (is_zero() || deg < lo_ || deg > hi_deg()) return GQ(0);
        return coeffs_[static_cast<size_t>(deg - lo_)];
    }
    GQ leading() const { return is_zero() ? GQ(0) : coeffs_.back(); }
    GQ trailing() const { return is_zero() ? GQ(0) : coeffs_.front(); }

    RingPoly operator-() const;
    friend RingPoly operator+(const RingPoly& a, const RingPoly& b);
    friend RingPoly operator-(const RingPoly& a, const RingPoly& b);
    friend RingPoly operator*(const RingPoly& a, const RingPoly& b);
    friend bool operator==(const RingPoly& a, const RingPoly& b) {
        return a.kind_ == b.kind_ && a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const RingPoly& a, const RingPoly& b) { return !(a == b); }

    RingPoly scaled(const GQ& c) const;
    RingPoly pow(long k) const;

    /// x -> x + i*c (additive) or z -> q^{-c} z (multiplicative), with the
    /// half-integer c passed as 2c.
    RingPoly shifted(long twice_c, const QBase* qb = nullptr) const;

    /// f*(x) = f(x*)*: conjugate coefficients; multiplicative kind also
    /// inverts z since (c e^{ikx})* = c* e^{-ikx}.
    RingPoly star() const;

    GQ eval(const GQ& v) const;

    std::string str(const std::string& var) const;

private:
    friend RingPoly exact_div(const RingPoly& p, const RingPoly& d);
    friend RingPoly poly_gcd(const RingPoly& a, const RingPoly& b);

    void trim();

    Kind kind_;
    long lo_;
    std::vector<GQ> coeffs_;
};

/// Quotient with zero remainder; throws NotDivisible otherwise.
RingPoly exact_div(const RingPoly& p, const RingPoly& d);

/// Monic gcd over the fraction field (Euclid); gcd(0,0) = 0.
RingPoly poly_gcd(const RingPoly& a, const RingPoly& b);

/// The sinusoidal coordinate the family's polynomials live in.
enum class EtaKind { XSquared, X, CosX };

/// Polynomial in eta, dense from degree 0.
class EtaPoly {
public:
    EtaPoly() = default;
    explicit EtaPoly(std::vector<GQ> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static EtaPoly constant(GQ c) { return EtaPoly({std::move(c)}); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    GQ coeff(long k) const {
        if (k < 0 || k > degree()) return GQ(0);
        return coeffs_[static_cast<size_t>(k)];
    }
    const std::vector<GQ>& coeffs() const { return coeffs_; }

    friend bool operator==(const EtaPoly& a, const EtaPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const EtaPoly& a, const EtaPoly& b) { return !(a == b); }

    std::string str() const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<GQ> coeffs_;
};

/// Rewrites p as a polynomial in eta. Throws NotInEtaImage if p has an odd
/// part (eta = x^2) or an asymmetric Laurent part (eta = cos x).
EtaPoly to_eta_basis(const RingPoly& p, EtaKind eta);

/// Substitutes eta(x) back: eta -> x^2, x, or (z + 1/z)/2.
RingPoly eta_embed(const EtaPoly& p, Kind kind, EtaKind eta);

struct Proportionality {
    bool verdict = false;
    std::optional<GQ> ratio;  // p = ratio * q when both nonzero
};

/// True iff p = c*q for a nonzero constant c (cross-multiplied, exact).
/// Both zero -> true with no ratio; exactly one zero -> false.
Proportionality proportional(const RingPoly& p, const RingPoly& q);
Proportionality proportional(const EtaPoly& p, const EtaPoly& q);

/// Normalized quotient of two RingPoly: gcd(num,den) is a unit and den is
/// monic (additive) / has trailing coefficient 1 (multiplicative).
class RatFunc {
public:
    explicit RatFunc(Kind kind = Kind::Additive)
        : num_(RingPoly::zero(kind)), den_(RingPoly::constant(kind, GQ(1))) {}
    RatFunc(RingPoly num, RingPoly den);
    /* implicit */ RatFunc(RingPoly num)
        : RatFunc(num, RingPoly::constant(num.kind(), GQ(1))) {}

    static RatFunc constant(Kind kind, GQ c) {
        return RatFunc(RingPoly::constant(kind, std::move(c)));
    }

    Kind kind() const { return num_.kind(); }
    const RingPoly& num() const { return num_; }
    const RingPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    /// Equality of canonical forms (= cross-multiplied equality).
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc star() const { return RatFunc(num_.star(), den_.star()); }
    RatFunc shifted(long twice_c, const QBase* qb = nullptr) const {
        return RatFunc(num_.shifted(twice_c, qb), den_.shifted(twice_c, qb));
    }
    RatFunc scaled(const GQ& c) const { return RatFunc(num_.scaled(c), den_); }

    std::string str(const std::string& var) const;

private:
    void normalize();
    RingPoly num_, den_;
};

}  // namespace casoratia
