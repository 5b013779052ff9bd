#pragma once

/**
 * @file verifier.hpp
 * @brief Structured pass/fail verification of every identity in scope,
 *        at randomly sampled exact rational parameter points.
 *
 * Every Pass is an exact algebraic equality over the Gaussian rationals —
 * no tolerances anywhere. Degenerate draws (accidental degree drops) are
 * resampled up to a bounded number of attempts before being reported.
 */

#include "casoratia/casoratian.hpp"
#include "casoratia/families.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace casoratia {

enum class Verdict { Pass, Fail, Degenerate };

std::string verdict_str(Verdict v);

struct VerificationReport {
    std::string check_id;
    std::string family;
    ParamPoint params;
    std::optional<IndexSet> D;
    std::optional<long> N;
    std::optional<long> n_or_v;
    Verdict verdict = Verdict::Pass;
    /// Counterexample dump on Fail, violated degree expectation on Degenerate.
    std::string witness;
    /// Proportionality constant when the check certifies an "is proportional".
    std::optional<GQ> ratio;
    std::uint64_t seed = 0;
    int resamples = 0;
    long elapsed_ms = 0;
};

/// Deliberate corruption of registry constants for negative-control runs:
/// a healthy suite must flip at least one verdict under any such mutation.
struct MutationHooks {
    std::optional<GQ> alpha_factor;  // multiplies the twist constant alpha
    std::optional<GQ> fn_factor;     // multiplies the forward shift factor f_n
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    int draws = 5;
    int max_resamples = 10;
    Rat sbase = Rat(1, 2);
    IndexSet dset = {1, 2};
    std::optional<long> N;  // defaults to max(dset) + n_extra
    long n_extra = 0;
    long n_max = 3;
    long v_max = 2;
    int threads = 1;
    MutationHooks mutate;
};

// ---- individual checks (pure; verdicts only, no exceptions for failures) ----

VerificationReport verify_shift_relations(const FamilySpec& spec, const ParamPoint& p,
                                          long n_max, const MutationHooks& mut = {});
VerificationReport verify_difference_eq(const FamilySpec& spec, const ParamPoint& p,
                                        long n_max, long v_max,
                                        const MutationHooks& mut = {});
VerificationReport verify_twist_relations(const FamilySpec& spec, const ParamPoint& p,
                                          const MutationHooks& mut = {});
VerificationReport verify_energy_duality(const FamilySpec& spec, const ParamPoint& p,
                                         long N, long n_max);
VerificationReport verify_main_identity(const FamilySpec& spec, const ParamPoint& p,
                                        const IndexSet& D, long N);
VerificationReport verify_poldual(const FamilySpec& spec, const ParamPoint& p,
                                  const IndexSet& D, long N, long n_max);
VerificationReport verify_potential_duality(const FamilySpec& spec, const ParamPoint& p,
                                            const IndexSet& D, long N);
VerificationReport verify_shape_reduction(const FamilySpec& spec, const ParamPoint& p,
                                          const IndexSet& D);
VerificationReport verify_xi_twist_link(const FamilySpec& spec, const ParamPoint& p,
                                        const IndexSet& D);
VerificationReport verify_awqi(const FamilySpec& spec, const ParamPoint& p, long n_max);
VerificationReport verify_pseudo_diffeq_dual(const FamilySpec& spec, const ParamPoint& p,
                                             long v, long N);
VerificationReport verify_degree_laws(const FamilySpec& spec, const ParamPoint& p,
                                      const IndexSet& D, long n);

/// All check ids in canonical emission order.
const std::vector<std::string>& all_check_ids();

/// One full suite pass for a family at a single sampled point; Degenerate
/// results are resampled (fresh draw) up to opt.max_resamples times.
std::vector<VerificationReport> run_suite(const FamilySpec& spec, const VerifyOptions& opt);

/// run_suite over the given families (or all 11 when empty), opt.draws
/// independent draws each, parallel across tasks, deterministic order.
std::vector<VerificationReport> run_batch(const std::vector<FamilyName>& fams,
                                          const VerifyOptions& opt);

}  // namespace casoratia
