#include "certlab/trial_engine.hpp"

#include <algorithm>
#include <limits>

namespace certlab {

void DesignSpec::validate() const {
    if (n < 1) throw config_error("design needs at least one arm");
    if (T < 1) throw config_error("total budget must be positive");
    if (s1 < 0 || s2 < 0) throw config_error("stage budgets must be non-negative");
    if (s1 + s2 != T) throw config_error("stage budgets must sum to the total budget");
    if (s1 != 0 && s1 < n)
        throw config_error("first stage needs at least one pull per arm (or zero for prior-only)");
    if (!(delta > 0.0 && delta < 1.0)) throw config_error("delta must be in (0,1)");
    if (stages < 1 || stages > 5) throw config_error("stages must lie in [1,5]");
}

StageData run_uniform_stage(const MeanVector& means, const ArmSet& arms, long long budget,
                            const OutcomeModel& model, Rng& rng, bool record_samples) {
    const int n = static_cast<int>(means.size());
    arms.validate(n);
    if (budget < arms.size()) throw infeasible_design("stage budget smaller than arm count");

    const long long pulls = budget / arms.size();  // leftover budget discarded
    StageData data(n);
    for (int arm : arms.arms)
        for (long long t = 0; t < pulls; ++t)
            data.add(arm, sample_outcome(means[arm], model, rng), record_samples);
    return data;
}

namespace {

CertificateResult best_certificate(const StageData& stage, const ArmSet& retained,
                                   long long width_budget, double delta,
                                   const BoundKind& bound) {
    const int k = retained.size();
    const double width = half_width(k, width_budget, delta, bound);
    CertificateResult cert;
    cert.k = k;
    cert.delta = delta;
    cert.per_arm_samples = width_budget / k;
    cert.l = -std::numeric_limits<double>::infinity();
    for (int arm : retained.arms) {
        double l = stage.mean(arm) - width;
        if (l > cert.l) {
            cert.l = l;
            cert.arm = arm;
        }
    }
    return cert;
}

TrialResult finish(CertificateResult cert, ArmSet retained, const MeanVector& means) {
    TrialResult r;
    r.certificate = cert;
    r.retained = std::move(retained);
    r.true_best = *std::max_element(means.begin(), means.end());
    r.normalized = r.true_best > 0.0 ? cert.l / r.true_best
                                     : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace

TrialResult run_trial(const DesignSpec& design, const Policy& policy,
                      const PolicyContext& base_ctx, const MeanVector& means,
                      const OutcomeModel& model, Rng& stage1_rng, Rng& policy_rng) {
    design.validate();
    const int n = design.n;
    const ArmSet all = ArmSet::all(n);

    StageData stage1(n);
    if (design.s1 > 0)
        stage1 = run_uniform_stage(means, all, design.s1, model, stage1_rng, true);

    PolicyContext ctx = base_ctx;
    ctx.design = &design;
    ctx.delta = design.delta;
    ctx.bound = design.bound;
    ctx.s2_for_width = design.s2;
    ctx.active = all;
    ArmSet retained = policy(stage1, ctx, policy_rng);
    retained.validate(n);

    StageData stage2 = run_uniform_stage(means, retained, design.s2, model, policy_rng, false);
    CertificateResult cert =
        best_certificate(stage2, retained, design.s2, design.delta, design.bound);
    return finish(cert, std::move(retained), means);
}

TrialResult run_single_stage(const DesignSpec& design, const MeanVector& means,
                             const OutcomeModel& model, Rng& rng) {
    const int n = design.n;
    if (design.T < n) throw infeasible_design("budget smaller than arm count");
    const ArmSet all = ArmSet::all(n);
    StageData data = run_uniform_stage(means, all, design.T, model, rng, false);
    CertificateResult cert = best_certificate(data, all, design.T, design.delta, design.bound);
    return finish(cert, all, means);
}

TrialResult run_multi_stage(const DesignSpec& design, const Policy& policy,
                            const PolicyContext& base_ctx, const MeanVector& means,
                            const OutcomeModel& model, Rng& stage1_rng, Rng& policy_rng) {
    design.validate();
    const int S = design.stages;
    if (S < 2) throw config_error("multi-stage runs need at least two stages");
    const int n = design.n;

    // Even split, remainder on the last stage.
    std::vector<long long> budgets(S, design.T / S);
    budgets[S - 1] = design.T - (S - 1) * (design.T / S);

    ArmSet active = ArmSet::all(n);
    std::vector<long long> pooled_counts(n, 0);
    std::vector<double> pooled_sums(n, 0.0);
    StageData last(n);

    for (int j = 0; j < S; ++j) {
        Rng& rng = (j == 0) ? stage1_rng : policy_rng;
        const bool is_last = (j == S - 1);
        StageData data = run_uniform_stage(means, active, budgets[j], model, rng, !is_last);
        for (int arm : active.arms) {
            pooled_counts[arm] += data.counts[arm];
            pooled_sums[arm] += data.sums[arm];
        }
        if (is_last) {
            last = std::move(data);
            break;
        }
        long long remaining = 0;
        for (int jj = j + 1; jj < S; ++jj) remaining += budgets[jj];
        PolicyContext ctx = base_ctx;
        ctx.design = &design;
        ctx.delta = design.delta;
        ctx.bound = design.bound;
        ctx.s2_for_width = design.last_stage_only ? budgets[S - 1] : remaining;
        ctx.active = active;
        ArmSet next = policy(data, ctx, policy_rng);
        next.validate(n);
        for (int arm : next.arms)
            if (!active.contains(arm)) throw policy_error("policy revived a pruned arm");
        active = std::move(next);
    }

    if (design.last_stage_only) {
        CertificateResult cert =
            best_certificate(last, active, budgets[S - 1], design.delta, design.bound);
        return finish(cert, std::move(active), means);
    }

    // Pooled mode: survivors were pulled in every stage, so their pooled
    // counts are equal; the width uses that count directly. Stage-1 data of
    // survivors is selection-biased, hence the heuristic flag.
    const long long m_pool = pooled_counts[active.arms.front()];
    const double width = half_width(1, m_pool, design.delta, design.bound);
    CertificateResult cert;
    cert.k = active.size();
    cert.delta = design.delta;
    cert.per_arm_samples = m_pool;
    cert.l = -std::numeric_limits<double>::infinity();
    for (int arm : active.arms) {
        double l = pooled_sums[arm] / static_cast<double>(pooled_counts[arm]) - width;
        if (l > cert.l) {
            cert.l = l;
            cert.arm = arm;
        }
    }
    TrialResult r = finish(cert, std::move(active), means);
    r.iid_violation = true;
    return r;
}

}  // namespace certlab
