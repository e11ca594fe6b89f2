#pragma once

#include <cmath>
#include <functional>

#include "certlab/arm_model.hpp"
#include "certlab/certificates.hpp"
#include "certlab/common.hpp"

namespace certlab {

// Trial geometry. s1 + s2 = T; s1 >= n unless s1 == 0 (prior-only first stage).
struct DesignSpec {
    int n = 10;
    int T = 10000;
    int s1 = 5000;
    int s2 = 5000;
    double delta = 0.1;
    BoundKind bound = BoundKind::eq3_hoeffding();
    int stages = 2;              // >2 runs the multi-stage extension
    bool last_stage_only = true; // certificate from last-stage data only

    void validate() const;
};

// Per-arm sufficient statistics for one stage. Per-sample records are kept
// when a policy needs to re-split the data (sample splitting).
struct StageData {
    std::vector<long long> counts;
    std::vector<double> sums;
    std::vector<std::vector<double>> samples;  // empty when not recorded

    explicit StageData(int n = 0) : counts(n, 0), sums(n, 0.0) {}

    int n_arms() const { return static_cast<int>(counts.size()); }
    bool has_samples() const { return !samples.empty(); }
    double mean(int arm) const { return sums[arm] / static_cast<double>(counts[arm]); }

    void add(int arm, double value, bool record) {
        counts[arm] += 1;
        sums[arm] += value;
        if (record) {
            if (samples.empty()) samples.resize(counts.size());
            samples[arm].push_back(value);
        }
    }
};

// Everything a first-stage decision rule may look at.
struct PolicyContext {
    const DesignSpec* design = nullptr;
    double delta = 0.1;
    BoundKind bound = BoundKind::eq3_hoeffding();
    long long s2_for_width = 0;   // budget that will back the certificate width
    ArmSet active;                // arms alive at this stage
    const MeanVector* true_means = nullptr;  // omniscient only
    const PriorSpec* prior = nullptr;        // prior-based policies
    const OutcomeModel* model = nullptr;
    int posterior_draws = 200;
    bool greedy_noise = false;  // add simulated second-stage noise to greedy scores
};

using Policy = std::function<ArmSet(const StageData&, const PolicyContext&, Rng&)>;

struct TrialResult {
    CertificateResult certificate;
    ArmSet retained;
    double true_best = 0.0;   // max_i mu_i
    double normalized = 0.0;  // l / true_best; NaN when true_best <= 0
    bool iid_violation = false;

    // Comparison metric: normalized certificate, or raw l when the
    // normalization is undefined (non-positive best mean).
    double score() const { return std::isnan(normalized) ? certificate.l : normalized; }
};

// Pull every arm in the set floor(budget/|arms|) times; leftovers discarded.
StageData run_uniform_stage(const MeanVector& means, const ArmSet& arms, long long budget,
                            const OutcomeModel& model, Rng& rng, bool record_samples = false);

// Two-stage trial: uniform stage 1 over [n] (stage1_rng), policy prune,
// uniform stage 2 over survivors (policy_rng), certificate = max over the
// retained arms.
TrialResult run_trial(const DesignSpec& design, const Policy& policy,
                      const PolicyContext& base_ctx, const MeanVector& means,
                      const OutcomeModel& model, Rng& stage1_rng, Rng& policy_rng);

// Single uniform pass over all arms with the full budget T.
TrialResult run_single_stage(const DesignSpec& design, const MeanVector& means,
                             const OutcomeModel& model, Rng& rng);

// Multi-stage extension (stages in [2,5]): budget split evenly with the
// remainder on the last stage; the policy prunes after every stage but the
// last. Certificate from last-stage data alone, or from pooled counts/sums
// of the survivors when last_stage_only is off (statistically heuristic,
// flagged via iid_violation).
TrialResult run_multi_stage(const DesignSpec& design, const Policy& policy,
                            const PolicyContext& base_ctx, const MeanVector& means,
                            const OutcomeModel& model, Rng& stage1_rng, Rng& policy_rng);

}  // namespace certlab
