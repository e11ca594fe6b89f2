#pragma once

#include <string>
#include <string_view>

#include "certlab/trial_engine.hpp"

namespace certlab {

// Arms in descending order of empirical mean; ties broken by fresh uniform
// draws (larger draw first).
struct SortedArms {
    std::vector<int> order;
    std::vector<double> tiebreak_draws;  // aligned with `order`
};

// Sorts every arm in the data. Throws insufficient_data on a zero-pull arm.
SortedArms sort_by_empirical_mean(const StageData& data, Rng& rng);
// Restricted variant used by multi-stage pruning.
SortedArms sort_by_empirical_mean(const StageData& data, const ArmSet& active, Rng& rng);

// First k entries of the order. Throws std::domain_error when k is out of range.
ArmSet top_k_select(const SortedArms& sorted, int k);

// Algorithm: split each arm's first-stage samples into halves U (training,
// gets the odd extra) and V (validation); sort by U-means; for every prefix
// size i score max_{j<=i} Vbar_sigma_j minus the width at (i, s2); pick the
// best-scoring k (smallest on ties); return the top k by pooled means.
ArmSet sample_split_select(const StageData& stage1, const PolicyContext& ctx, Rng& rng);

// Oracle baseline: k* maximizes prefix-max of true means along the empirical
// ordering minus the omniscient width; returns that prefix.
ArmSet omniscient_select(const SortedArms& sorted, const MeanVector& means,
                         const PolicyContext& ctx);

// k drawn uniformly from [1..n], then top-k of the empirical ordering.
ArmSet random_k_select(const SortedArms& sorted, Rng& rng);

// Configured decision rule (or adaptive baseline) selected by name.
struct PolicyKind {
    enum class Id {
        single_stage,
        best_arm,
        random_k,
        top_k,
        sample_split,
        omniscient,
        greedy_prior,
        ucb,
        succ_elim,
        two_stage_se,
        two_stage_thompson,
    };

    Id id = Id::sample_split;
    int k = 1;  // top_k only

    // "single_stage" | "best_arm" | "random_k" | "top_k:<k>" | "sample_split" |
    // "omniscient" | "greedy_prior" | "ucb" | "succ_elim" | "two_stage_se" |
    // "two_stage_thompson"
    static PolicyKind parse(std::string_view name);
    std::string name() const;

    // True for the fully adaptive baselines that bypass the two-stage engine.
    bool is_fully_adaptive() const { return id == Id::ucb || id == Id::succ_elim; }
    bool is_single_stage() const { return id == Id::single_stage; }
    bool is_thompson() const { return id == Id::two_stage_thompson; }
};

// Two-stage decision rule for the engine. Not defined for single_stage, ucb,
// succ_elim or two_stage_thompson (those have dedicated runners).
Policy make_policy(const PolicyKind& kind);

// One replication of any configured policy: routes to the two-stage engine,
// the multi-stage engine (design.stages > 2), the single-stage pass, or the
// adaptive runners. `prior` is the policy's belief (unperturbed).
TrialResult run_policy_trial(const PolicyKind& kind, const DesignSpec& design,
                             const PriorSpec* prior, const OutcomeModel& model,
                             const MeanVector& means, int posterior_draws, bool greedy_noise,
                             Rng& stage1_rng, Rng& policy_rng);

}  // namespace certlab
