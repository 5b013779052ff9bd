#pragma once

/**
 * @file casoratian.hpp
 * @brief Casoratian determinants, the deformed polynomials Xi / Xi-bar /
 *        P_{D,n}, duality bookkeeping, and deformed potential functions.
 *
 * Conventions:
 *   W_gamma[f_1..f_n](x) = i^{n(n-1)/2} det( f_k(x_j^{(n)}) ),
 *   x_j^{(n)} = x + i((n+1)/2 - j) gamma, and W of no functions is 1.
 * All imaginary shifts use the family's original base even when the
 * functions themselves were built at a twisted (base-inverted) point.
 * Xi polynomials are normalized with unit prefactor: proportionality
 * constants are the caller's business.
 */

#include "casoratia/families.hpp"
#include "casoratia/poly.hpp"

#include <vector>

namespace casoratia {

/// A set of distinct non-negative integers, kept sorted ascending.
using IndexSet = std::vector<long>;

enum class DetMethod { Auto, Cofactor, Bareiss };

/// Determinant of a square RingPoly matrix. Auto picks cofactor expansion
/// for order <= 3 and fraction-free Bareiss elimination above.
RingPoly poly_det(std::vector<std::vector<RingPoly>> m, Kind kind,
                  DetMethod method = DetMethod::Auto);

/// The Casoratian W_gamma[fs](x); qb supplies q for multiplicative shifts.
RingPoly casoratian(const std::vector<RingPoly>& fs, const QBase* qb = nullptr,
                    DetMethod method = DetMethod::Auto);

/// varphi_M(x) = phi(x)^{[M/2]} prod_{k=1}^{M-2}
///               (phi(x-ik gamma/2) phi(x+ik gamma/2))^{[(M-k)/2]}.
RingPoly varphi_m(const FamilySpec& spec, long M, const QBase* qb = nullptr);

/// Xi-bar_D = varphi_M^{-1} W_gamma[P-check_{d_1},...,P-check_{d_M}].
/// shift_qb overrides the base used for the Casoratian grid shifts; by
/// default p's own base is used. The override matters only when evaluating
/// at a Group (B) twisted point whose coefficients carry q^{-1} while the
/// shift structure stays with the original q.
RingPoly xibar(const FamilySpec& spec, const IndexSet& D, const ParamPoint& p,
               const QBase* shift_qb = nullptr);

/// Xi_D = varphi_M^{-1} W_gamma[xi-check_{d_1},...,xi-check_{d_M}],
/// Casoratian shifts at p's base even though the xi-check carry t(lambda).
RingPoly xi(const FamilySpec& spec, const IndexSet& D, const ParamPoint& p);

/// P_{D,n} = varphi_{M+1}^{-1} i^{M(M+1)/2} det[X_{d_1}..X_{d_M} Z_n] with
/// (X_v)_j = xi-check_v(x_j^{(M+1)}) and (Z_n)_j = r_j(x) P-check_n(x_j^{(M+1)}).
RingPoly p_dn(const FamilySpec& spec, const IndexSet& D, long n, const ParamPoint& p);

/// ell_D = sum d_j - M(M-1)/2, the generic eta-degree of Xi_D.
long ell_d(const IndexSet& D);

struct DualData {
    IndexSet dbar;         // {0..N} minus {N - d_j}
    ParamPoint lambda_bar; // lambda - (N+1) delta
    long mu;               // min{N - d_j} = N - max(D)
};
DualData dualize(const FamilySpec& spec, const IndexSet& D, long N, const ParamPoint& p);

/// Krein-Adler non-singularity: prod_j (n - e_j) >= 0 for every n >= 0.
bool krein_adler_admissible(const IndexSet& dbar);

/// V-hat_D = kappa^{-M} V*(x-i gamma/2; lambda-M delta)
///           * Xi_{D'}(x+i gamma/2)/Xi_{D'}(x-i gamma/2)
///           * Xi_D(x-i gamma)/Xi_D(x),  D' = D minus its largest element.
RatFunc deformed_potential_pv(const FamilySpec& spec, const IndexSet& D,
                              const ParamPoint& p);

/// V^KA_{Dbar} = kappa^{N+1-M} V(x; lambda-M delta)
///           * Xibar_{Dbar'}(x-i gamma; lb)/Xibar_{Dbar'}(x; lb)
///           * Xibar_{Dbar}(x+i gamma/2; lb)/Xibar_{Dbar}(x-i gamma/2; lb),
/// lb = lambda - (N+1) delta and Dbar' = Dbar with mu added back.
RatFunc deformed_potential_ka(const FamilySpec& spec, const IndexSet& D, long N,
                              const ParamPoint& p);

}  // namespace casoratia
