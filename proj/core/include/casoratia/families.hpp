#pragma once

/**
 * @file families.hpp
 * @brief Registry of the eleven polynomial families and their exact data:
 *        parameters, shifts, twists, energies, series, potentials, r_j.
 *
 * Families:
 *   Additive (polynomials in x):        W, cdH, cH, MP
 *   Multiplicative (Laurent in z):      AW, cqJ, cdqH, ASC, cbqH, cqH, cqL
 *
 * The five Group (B) families (cdqH, ASC, cbqH, cqH, cqL) twist by
 * inverting the base q -> q^{-1} on top of the parameter map; a twisted
 * ParamPoint carries the inverted base with it.
 */

#include "casoratia/poly.hpp"
#include "casoratia/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace casoratia {

enum class FamilyName { W, AW, cdH, cH, MP, cqJ, cdqH, ASC, cbqH, cqH, cqL };

struct UnknownFamily : std::runtime_error {
    explicit UnknownFamily(const std::string& id) : std::runtime_error("unknown family: " + id) {}
};
struct CapExceeded : std::runtime_error {
    CapExceeded() : std::runtime_error("polynomial degree exceeds the implementation cap") {}
};

struct FamilySpec {
    FamilyName name;
    std::string id;          // "W", "AW", ...
    Kind kind;
    int n_params;            // arity of the raw parameter vector lam
    std::vector<Rat> delta;  // parameter shift vector (per lam entry)
    EtaKind eta;
    bool group_b;            // twist inverts the base q
};

const FamilySpec& family(FamilyName name);
const FamilySpec& family(const std::string& id);
const std::vector<FamilyName>& all_families();

/// Concrete rational parameter values for one family.
///   W/cdH/cH: lam = a_j          MP:  lam = {a}, eiphi on the unit circle
///   AW/cdqH/ASC/cbqH: lam = a_j  cqJ: lam = {alpha, beta} (integers)
///   cqH: lam empty               cqL: lam = {alpha} (integer)
struct ParamPoint {
    FamilyName family = FamilyName::W;
    std::vector<Rat> lam;
    std::optional<QBase> qbase;  // multiplicative only; inverted under Group (B) twist
    GQ eiphi;                    // MP only: exact e^{i phi}

    const QBase& qb() const {
        if (!qbase) throw MissingQBase();
        return *qbase;
    }
};

inline constexpr long kDegreeCap = 16;

/// Random rational parameter draw obeying the genericity policy.
/// sbase is the fourth root s of q for the multiplicative families.
ParamPoint sample_params(const FamilySpec& spec, std::uint64_t seed,
                         const Rat& sbase = Rat(1, 2));

/// P-check_n(x; lambda), the degree-n eigenpolynomial in x or z.
RingPoly eigen_poly(const FamilySpec& spec, long n, const ParamPoint& p);

/// xi-check_v = P-check_v at twisted parameters (Group (B): base q^{-1} too).
RingPoly pseudo_poly(const FamilySpec& spec, long v, const ParamPoint& p);

/// E_n(lambda); n may be negative (E_{-v-1} is needed for pseudo states).
GQ energy(const FamilySpec& spec, long n, const ParamPoint& p);

/// The involutive parameter twist t(lambda).
ParamPoint twist_params(const FamilySpec& spec, const ParamPoint& p);

/// (alpha(lambda), alpha'(lambda)) with alpha' = E_{-1}(lambda).
std::pair<GQ, GQ> twist_constants(const FamilySpec& spec, const ParamPoint& p);

/// V(x; lambda), or the twisted V'(x; lambda) when twisted is true.
RatFunc potential(const FamilySpec& spec, const ParamPoint& p, bool twisted = false);

/// lambda + k*delta, exact (multiplicative families multiply a_j by s-powers).
ParamPoint shift_params(const FamilySpec& spec, const ParamPoint& p, long k);

/// The auxiliary factor r_j(x_j^{(M+1)}; lambda, M+1) as an explicit
/// polynomial in the base variable (unit overall normalization), 1 <= j <= M+1.
RingPoly r_factor(const FamilySpec& spec, long j, long M, const ParamPoint& p);

/// f_n(lambda) and b_{n-1}(lambda), the forward/backward shift factors
/// with E_n = f_n * b_{n-1}.
GQ fn_factor(const FamilySpec& spec, long n, const ParamPoint& p);
GQ bn_factor(const FamilySpec& spec, long n, const ParamPoint& p);

/// phi(x): 2x, 1, or 2 sin x = -i(z - 1/z), as a RingPoly.
RingPoly phi_poly(const FamilySpec& spec);

/// kappa: 1 (additive) or q^{-1} (multiplicative, at p's own base).
Rat kappa(const FamilySpec& spec, const ParamPoint& p);

/// Twice gamma's role in shifts is carried by the ring kind; this reports
/// the series parameters a_j actually fed to the hypergeometric sums
/// (derived from s-powers for cqJ/cqL).
std::vector<GQ> series_params(const FamilySpec& spec, const ParamPoint& p);

}  // namespace casoratia
