#include "certlab/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "certlab/rng.hpp"

namespace certlab {

namespace {

constexpr int kThompsonPosteriorDraws = 10000;

TrialResult finish_adaptive(int arm, double emp_mean, long long own_samples, int k,
                            const DesignSpec& design, const ArmSet& retained,
                            const MeanVector& means, bool iid_violation) {
    TrialResult r;
    r.certificate.arm = arm;
    r.certificate.k = k;
    r.certificate.delta = design.delta;
    r.certificate.per_arm_samples = own_samples;
    r.certificate.l = emp_mean - half_width(1, own_samples, design.delta, design.bound);
    r.retained = retained;
    r.true_best = *std::max_element(means.begin(), means.end());
    r.normalized = r.true_best > 0.0 ? r.certificate.l / r.true_best
                                     : std::numeric_limits<double>::quiet_NaN();
    r.iid_violation = iid_violation;
    return r;
}

}  // namespace

TrialResult ucb_run(const MeanVector& means, const OutcomeModel& model,
                    const DesignSpec& design, Rng& rng) {
    const int n = static_cast<int>(means.size());
    const long long T = design.T;
    if (T < n) throw infeasible_design("UCB budget smaller than arm count");

    std::vector<long long> counts(n, 0);
    std::vector<double> sums(n, 0.0);
    auto pull = [&](int arm) {
        sums[arm] += sample_outcome(means[arm], model, rng);
        counts[arm] += 1;
    };
    for (int arm = 0; arm < n; ++arm) pull(arm);
    for (long long t = n + 1; t <= T; ++t) {
        int pick = 0;
        double best = -std::numeric_limits<double>::infinity();
        const double logt = std::log(static_cast<double>(t));
        for (int arm = 0; arm < n; ++arm) {
            const double ucb = sums[arm] / counts[arm] + std::sqrt(2.0 * logt / counts[arm]);
            if (ucb > best) {
                best = ucb;
                pick = arm;
            }
        }
        pull(pick);
    }

    int most = 0;
    for (int arm = 1; arm < n; ++arm)
        if (counts[arm] > counts[most]) most = arm;
    return finish_adaptive(most, sums[most] / counts[most], counts[most], 1, design,
                           ArmSet(std::vector<int>{most}), means, /*iid_violation=*/true);
}

TrialResult successive_elimination_run(const MeanVector& means, const OutcomeModel& model,
                                       const DesignSpec& design, Rng& rng) {
    const int n = static_cast<int>(means.size());
    const long long T = design.T;
    if (T < n) throw infeasible_design("SE budget smaller than arm count");

    std::vector<long long> counts(n, 0);
    std::vector<double> sums(n, 0.0);
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;

    long long spent = 0;
    long long t = 0;
    while (spent + static_cast<long long>(alive.size()) <= T) {
        for (int arm : alive) {
            sums[arm] += sample_outcome(means[arm], model, rng);
            counts[arm] += 1;
        }
        spent += static_cast<long long>(alive.size());
        t += 1;
        if (alive.size() <= 1) continue;
        const double r = std::sqrt(
            std::log(4.0 * n * static_cast<double>(t) * static_cast<double>(t) / design.delta) /
            (2.0 * static_cast<double>(t)));
        double top = -std::numeric_limits<double>::infinity();
        for (int arm : alive) top = std::max(top, sums[arm] / counts[arm]);
        std::vector<int> keep;
        for (int arm : alive)
            if (sums[arm] / counts[arm] + r >= top - r) keep.push_back(arm);
        alive = std::move(keep);
    }

    int best = alive.front();
    for (int arm : alive)
        if (sums[arm] / counts[arm] > sums[best] / counts[best]) best = arm;
    return finish_adaptive(best, sums[best] / counts[best], counts[best],
                           static_cast<int>(alive.size()), design, ArmSet(alive), means,
                           /*iid_violation=*/true);
}

ArmSet two_stage_se_select(const StageData& stage1, const ArmSet& active, double delta) {
    const int n_active = active.size();
    long long t = 0;
    double top = -std::numeric_limits<double>::infinity();
    for (int arm : active.arms) {
        if (stage1.counts[arm] < 1)
            throw insufficient_data("SE pruning needs at least one pull per arm");
        t = std::max<long long>(t, stage1.counts[arm]);
        top = std::max(top, stage1.mean(arm));
    }
    const double r = std::sqrt(
        std::log(4.0 * n_active * static_cast<double>(t) * static_cast<double>(t) / delta) /
        (2.0 * static_cast<double>(t)));
    std::vector<int> keep;
    for (int arm : active.arms)
        if (stage1.mean(arm) + r >= top - r) keep.push_back(arm);
    return ArmSet(std::move(keep));  // empirical best always survives
}

std::vector<double> posterior_argmax_probabilities(const std::vector<double>& alpha,
                                                   const std::vector<double>& beta, int draws,
                                                   Rng& rng) {
    const int n = static_cast<int>(alpha.size());
    std::vector<long long> wins(n, 0);
    for (int rep = 0; rep < draws; ++rep) {
        int argmax = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double x = beta_sample(alpha[i], beta[i], rng);
            if (x > best) {
                best = x;
                argmax = i;
            }
        }
        wins[argmax] += 1;
    }
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = static_cast<double>(wins[i]) / draws;
    return p;
}

TrialResult thompson_two_stage_run(const DesignSpec& design, const MeanVector& means,
                                   const OutcomeModel& model, Rng& stage1_rng,
                                   Rng& policy_rng) {
    design.validate();
    if (model.kind != OutcomeKind::bernoulli)
        throw config_error("two-stage Thompson sampling needs Bernoulli outcomes");
    const int n = design.n;
    const ArmSet all = ArmSet::all(n);

    StageData stage1 = run_uniform_stage(means, all, design.s1, model, stage1_rng, false);

    // P(arm is posterior argmax) under Beta(1 + succ, 1 + fail).
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = 1.0 + stage1.sums[i];
        b[i] = 1.0 + static_cast<double>(stage1.counts[i]) - stage1.sums[i];
    }
    const std::vector<double> p_argmax =
        posterior_argmax_probabilities(a, b, kThompsonPosteriorDraws, policy_rng);

    // Proportional allocation; the most probable arm always gets a pull.
    std::vector<long long> alloc(n, 0);
    int p_max_arm = 0;
    for (int i = 0; i < n; ++i) {
        alloc[i] = static_cast<long long>(std::floor(p_argmax[i] * design.s2));
        if (p_argmax[i] > p_argmax[p_max_arm]) p_max_arm = i;
    }
    if (alloc[p_max_arm] == 0) alloc[p_max_arm] = 1;
    long long total = 0;
    for (long long m : alloc) total += m;
    while (total > design.s2) {
        int biggest = 0;
        for (int i = 1; i < n; ++i)
            if (alloc[i] > alloc[biggest]) biggest = i;
        alloc[biggest] -= 1;
        total -= 1;
    }
    if (total == 0) throw policy_error("Thompson allocation assigned no samples");

    StageData stage2(n);
    std::vector<int> retained;
    for (int i = 0; i < n; ++i) {
        for (long long p = 0; p < alloc[i]; ++p)
            stage2.add(i, sample_outcome(means[i], model, policy_rng), false);
        if (alloc[i] > 0) retained.push_back(i);
    }

    TrialResult r;
    r.retained = ArmSet(retained);
    r.true_best = *std::max_element(means.begin(), means.end());
    r.certificate.k = static_cast<int>(retained.size());
    r.certificate.delta = design.delta;
    r.certificate.l = -std::numeric_limits<double>::infinity();
    for (int arm : retained) {
        const double l =
            stage2.mean(arm) - half_width(1, stage2.counts[arm], design.delta, design.bound);
        if (l > r.certificate.l) {
            r.certificate.l = l;
            r.certificate.arm = arm;
            r.certificate.per_arm_samples = stage2.counts[arm];
        }
    }
    r.normalized = r.true_best > 0.0 ? r.certificate.l / r.true_best
                                     : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace certlab
