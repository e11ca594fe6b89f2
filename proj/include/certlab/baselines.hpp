#pragma once

#include "certlab/trial_engine.hpp"

namespace certlab {

// UCB1 with budget T: pull each arm once, then argmax of mean + sqrt(2 ln t / N_i).
// Certificate from the most-pulled arm's own samples at its realized count;
// adaptive data breaks the i.i.d. assumption behind the width, so the result
// carries iid_violation = true.
TrialResult ucb_run(const MeanVector& means, const OutcomeModel& model,
                    const DesignSpec& design, Rng& rng);

// Successive elimination with budget T: rounds of one pull per survivor;
// after t rounds drop arm i when mean_i + r(t) < max_j mean_j - r(t) with
// r(t) = sqrt(ln(4 n t^2 / delta) / (2t)). Certificate from the best
// survivor's own samples.
TrialResult successive_elimination_run(const MeanVector& means, const OutcomeModel& model,
                                       const DesignSpec& design, Rng& rng);

// One application of the SE elimination rule at t = floor(s1/n) pulls per arm.
// Never empty: the empirical best always survives.
ArmSet two_stage_se_select(const StageData& stage1, const ArmSet& active, double delta);

// Monte Carlo estimate of P(arm i draws the largest value) under independent
// Beta(alpha_i, beta_i) posteriors.
std::vector<double> posterior_argmax_probabilities(const std::vector<double>& alpha,
                                                   const std::vector<double>& beta, int draws,
                                                   Rng& rng);

// Two-stage Thompson sampling: stage 1 uniform, then stage-2 budget allocated
// proportionally to the posterior argmax probabilities p_i (10^4 Monte Carlo
// draws over the Beta(1+succ, 1+fail) posteriors). Per-arm certificates use
// each arm's own allocation; arms with zero allocation are excluded.
// Bernoulli outcomes only.
TrialResult thompson_two_stage_run(const DesignSpec& design, const MeanVector& means,
                                   const OutcomeModel& model, Rng& stage1_rng,
                                   Rng& policy_rng);

}  // namespace certlab
