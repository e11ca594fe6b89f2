#pragma once

#include "certlab/arm_model.hpp"
#include "certlab/certificates.hpp"
#include "certlab/common.hpp"
#include "certlab/trial_engine.hpp"

namespace certlab {

// Data-conditioned belief over the mean vector, factorized per arm.
struct Posterior {
    enum class Kind { beta_bernoulli, discrete };

    Kind kind = Kind::beta_bernoulli;
    // beta_bernoulli: per-arm parameters.
    std::vector<double> alpha;
    std::vector<double> beta;
    // discrete: shared support values and per-arm weights over them.
    std::vector<double> support;
    std::vector<std::vector<double>> weights;  // weights[arm][value], each a simplex

    int n_arms() const {
        return kind == Kind::beta_bernoulli ? static_cast<int>(alpha.size())
                                            : static_cast<int>(weights.size());
    }
};

// d independent mean-vector draws, row-major d x n.
struct PosteriorDraws {
    int d = 0;
    int n = 0;
    std::vector<double> values;

    double at(int j, int i) const { return values[static_cast<size_t>(j) * n + i]; }
    double& at(int j, int i) { return values[static_cast<size_t>(j) * n + i]; }
};

// Conjugate update for beta/uniform01 priors under Bernoulli outcomes;
// likelihood reweighting for discrete priors (Bernoulli or Gaussian).
// Other pairings throw config_error.
Posterior posterior_update(const PriorSpec& prior, const OutcomeModel& model,
                           const StageData& data);

PosteriorDraws sample_posterior(const Posterior& post, int d, Rng& rng);

struct GreedyOptions {
    bool simulate_stage2_noise = false;  // re-score with Binomial(m, mu)/m draws
    const OutcomeModel* model = nullptr;
    Rng* rng = nullptr;
};

// Monte Carlo set objective g(B) = (1/d) sum_j max_{a in B} draws[j][a].
double set_objective(const PosteriorDraws& draws, const ArmSet& set);
// g(B) - half_width(|B|, s2, delta, bound)
double set_score(const PosteriorDraws& draws, const ArmSet& set, long long s2, double delta,
                 const BoundKind& bound);

// Nested greedy augmentation order over the arms: order[0..i) is the
// cardinality-(i+1) candidate set B^(i+1), objective[i] = g(B^(i+1)).
struct GreedyChain {
    std::vector<int> order;
    std::vector<double> objective;
};
GreedyChain greedy_chain(const PosteriorDraws& draws, const ArmSet& active);

// Greedily grow nested sets B^1 c B^2 c ... c B^n maximizing g, score each
// B^i with the width at cardinality i and return the best (smallest i on
// ties). O(n^2 d).
ArmSet greedy_prior_select(const PosteriorDraws& draws, long long s2, double delta,
                           const BoundKind& bound, const GreedyOptions& opts = {});
// Restricted to a subset of arms (multi-stage pruning).
ArmSet greedy_prior_select(const PosteriorDraws& draws, const ArmSet& active, long long s2,
                           double delta, const BoundKind& bound, const GreedyOptions& opts = {});

// Exact maximizer of the set score over all non-empty subsets. Refuses n > 20.
ArmSet brute_force_select(const PosteriorDraws& draws, long long s2, double delta,
                          const BoundKind& bound);

}  // namespace certlab
