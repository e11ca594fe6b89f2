#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "certlab/certificates.hpp"
#include "certlab/common.hpp"
#include "certlab/policies.hpp"
#include "certlab/trial_engine.hpp"

namespace certlab {

// Fully enumerable Bernoulli trial: (pulls_per_arm+1)^n first-stage outcomes
// with binomial weights, exact second-stage expectations when floor(s2/k) is
// small.
struct EnumInstance {
    MeanVector means;       // n <= 3
    int pulls_per_arm = 2;  // <= 3
    long long s2 = 8;
    double delta = 0.1;
    BoundKind bound = BoundKind::eq3_hoeffding();

    int n() const { return static_cast<int>(means.size()); }
};

// Deterministic policy as an explicit map from per-arm success counts to a
// retained set.
using ProfilePolicy = std::function<ArmSet(const std::vector<int>&)>;

// Policy as a map from success profiles to a set of empirical ranks (1-based,
// 1 = highest mean); the retained arms are the ones at those ranks, averaged
// over tie-consistent orderings. This is the permutation-equivariant policy
// class behind the rank-dominance argument.
using RankPolicy = std::function<std::vector<int>(const std::vector<int>&)>;

struct BoundReport {
    std::string claim;
    double bound = 0.0;
    double value = 0.0;
    double margin = 0.0;  // value - bound
    bool pass = false;
    std::string details;

    nlohmann::json to_json() const;
};

// Exact objective value: sum over first-stage success profiles of the profile
// probability times the exact expected best certificate over the retained
// set. Refuses state spaces beyond ~1e6 profiles. Second-stage expectations
// enumerate binomial outcomes when floor(s2/k) <= 8; beyond that multi-arm
// maxima fall back to seeded Monte Carlo (the closed form still covers k=1).
double exact_policy_value(const EnumInstance& inst, const ProfilePolicy& policy);

// Exact value of a rank-set policy; ties averaged over consistent orderings.
double exact_rank_policy_value(const EnumInstance& inst, const RankPolicy& policy);

// Exact value of a top-k policy with profile-dependent k; ties in the
// empirical ordering are averaged over all consistent orderings.
double exact_topk_value(const EnumInstance& inst,
                        const std::function<int(const std::vector<int>&)>& k_of_profile);

// For `trials` random rank-set policies: the top-k counterpart (same set size
// per profile) must achieve at least the original value, within 1e-12.
// Policies that pick arms by identity rather than rank can beat the
// randomized-tie counterpart, so those stay out of this check.
BoundReport verify_lemma2(const EnumInstance& inst, int trials, Rng& rng);

// Exhaustive enumeration of every profile->subset map (n <= 2, pulls <= 2):
// the best overall value must equal the best profile-dependent top-k value.
BoundReport verify_theorem1(const EnumInstance& inst);

// Monte Carlo check of the first-order stochastic dominance of mu at the
// higher empirical ranks: P(mu_sigma_i >= t) >= P(mu_sigma_j >= t) - 3 se for
// all i < j and thresholds t in {0.1,...,0.9}.
BoundReport verify_lemma1(const MeanVector& means, int pulls_per_arm, int replications,
                          Rng& rng);

// Two-sum lower bound on the sample-splitting certificate value:
//   f(pi*) - sum_{i<=k*} exp(-[D_{k*i}-(c(k*)-c(i))]^2 s1/n) [D_{k*i}-(c(k*)-c(i))]
//          - sum_{i>k*}  exp(-D_{ik*}^2 s1/n)                [D_{k*i}-(c(k*)-c(i))]
// with D_{ij} = mu_sigma_i - mu_sigma_j and c(i) = sqrt(2 log(1/delta) i/s2).
// f(pi*) is Monte Carlo-estimated with the omniscient policy. Both sums are
// exposed so a sign flip in the printed index order stays auditable.
struct Prop1Result {
    double f_star = 0.0;
    double f_star_se = 0.0;
    double sum_below = 0.0;  // i = 1..k*
    double sum_above = 0.0;  // i = k*+1..n
    double bound() const { return f_star - sum_below - sum_above; }
};

Prop1Result proposition1_bound(const MeanVector& mu_by_sigma, int s1, int s2, double delta,
                               int k_star, int mc_reps, Rng& rng);

// argmax over i of (max_{j<=i} mu_by_sigma_j) - half_width(i, s2, ...), the
// k* used both by the omniscient policy and the proposition check.
int optimal_k_for_bound(const MeanVector& mu_by_sigma, long long s2, double delta,
                        const BoundKind& bound);

// Fraction of replications whose certificate lower-bounds the selected arm's
// true mean.
double empirical_coverage(const DesignSpec& design, const PolicyKind& policy,
                          const MeanVector& means, const OutcomeModel& model,
                          int replications, std::uint64_t master_seed, int threads = 1);

// The full claim suite behind `certlab verify` (coverage, Lemmas 1-2,
// Theorem 1, the greedy approximation ratio, Proposition 1).
std::vector<BoundReport> run_all_verifications(std::uint64_t master_seed, int threads);

// Greedy-vs-brute-force ratio check on random shared-draw instances.
BoundReport verify_theorem2_ratio(int instances, std::uint64_t master_seed);

}  // namespace certlab
