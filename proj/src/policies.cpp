#include "certlab/policies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "certlab/baselines.hpp"
#include "certlab/bayes.hpp"

namespace certlab {

SortedArms sort_by_empirical_mean(const StageData& data, const ArmSet& active, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SortedArms sorted;
    sorted.order = active.arms;
    sorted.tiebreak_draws.resize(active.arms.size());
    std::vector<double> draw_of(data.n_arms(), 0.0);
    for (int arm : active.arms) {
        if (data.counts[arm] < 1)
            throw insufficient_data("arm with zero pulls cannot be ranked");
        draw_of[arm] = u(rng);
    }
    std::sort(sorted.order.begin(), sorted.order.end(), [&](int a, int b) {
        double ma = data.mean(a), mb = data.mean(b);
        if (ma != mb) return ma > mb;
        if (draw_of[a] != draw_of[b]) return draw_of[a] > draw_of[b];
        return a < b;
    });
    for (size_t i = 0; i < sorted.order.size(); ++i)
        sorted.tiebreak_draws[i] = draw_of[sorted.order[i]];
    return sorted;
}

SortedArms sort_by_empirical_mean(const StageData& data, Rng& rng) {
    return sort_by_empirical_mean(data, ArmSet::all(data.n_arms()), rng);
}

ArmSet top_k_select(const SortedArms& sorted, int k) {
    if (k < 1 || k > static_cast<int>(sorted.order.size()))
        throw std::domain_error("top-k size out of range");
    return ArmSet(std::vector<int>(sorted.order.begin(), sorted.order.begin() + k));
}

ArmSet random_k_select(const SortedArms& sorted, Rng& rng) {
    std::uniform_int_distribution<int> pick(1, static_cast<int>(sorted.order.size()));
    return top_k_select(sorted, pick(rng));
}

ArmSet sample_split_select(const StageData& stage1, const PolicyContext& ctx, Rng& rng) {
    if (!stage1.has_samples())
        throw insufficient_data("sample splitting needs per-sample stage-1 records");
    const std::vector<int>& arms = ctx.active.arms;
    const int n = static_cast<int>(arms.size());

    // Random per-arm split; odd counts put the extra sample in U.
    StageData train(stage1.n_arms());  // U
    StageData val(stage1.n_arms());    // V
    for (int arm : arms) {
        const auto& s = stage1.samples[arm];
        if (s.size() < 2)
            throw insufficient_data("sample splitting needs at least two samples per arm");
        std::vector<double> shuffled(s);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const size_t u_count = (shuffled.size() + 1) / 2;
        for (size_t i = 0; i < shuffled.size(); ++i)
            (i < u_count ? train : val).add(arm, shuffled[i], false);
    }

    SortedArms by_train = sort_by_empirical_mean(train, ctx.active, rng);

    // Candidate certificate at every prefix size; the validation means stand
    // in for the future second stage, so the width uses s2.
    int best_k = 1;
    double best_l = -std::numeric_limits<double>::infinity();
    double prefix_max = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
        prefix_max = std::max(prefix_max, val.mean(by_train.order[i - 1]));
        double l = prefix_max - half_width(i, ctx.s2_for_width, ctx.delta, ctx.bound);
        if (l > best_l) {
            best_l = l;
            best_k = i;
        }
    }

    SortedArms by_all = sort_by_empirical_mean(stage1, ctx.active, rng);
    return top_k_select(by_all, best_k);
}

ArmSet omniscient_select(const SortedArms& sorted, const MeanVector& means,
                         const PolicyContext& ctx) {
    const BoundKind oracle = BoundKind::omniscient_c();
    int best_k = 1;
    double best_v = -std::numeric_limits<double>::infinity();
    double prefix_max = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= static_cast<int>(sorted.order.size()); ++i) {
        prefix_max = std::max(prefix_max, means[sorted.order[i - 1]]);
        double v = prefix_max - half_width(i, ctx.s2_for_width, ctx.delta, oracle);
        if (v > best_v) {
            best_v = v;
            best_k = i;
        }
    }
    return top_k_select(sorted, best_k);
}

PolicyKind PolicyKind::parse(std::string_view name) {
    PolicyKind p;
    if (name == "single_stage") p.id = Id::single_stage;
    else if (name == "best_arm") p.id = Id::best_arm;
    else if (name == "random_k") p.id = Id::random_k;
    else if (name == "sample_split") p.id = Id::sample_split;
    else if (name == "omniscient") p.id = Id::omniscient;
    else if (name == "greedy_prior") p.id = Id::greedy_prior;
    else if (name == "ucb") p.id = Id::ucb;
    else if (name == "succ_elim") p.id = Id::succ_elim;
    else if (name == "two_stage_se") p.id = Id::two_stage_se;
    else if (name == "two_stage_thompson") p.id = Id::two_stage_thompson;
    else if (name.starts_with("top_k:")) {
        p.id = Id::top_k;
        auto tail = name.substr(6);
        int k = 0;
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), k);
        if (ec != std::errc() || ptr != tail.data() + tail.size() || k < 1)
            throw config_error("bad top_k policy spec: " + std::string(name));
        p.k = k;
    } else {
        throw config_error("unknown policy: " + std::string(name));
    }
    return p;
}

std::string PolicyKind::name() const {
    switch (id) {
        case Id::single_stage: return "single_stage";
        case Id::best_arm: return "best_arm";
        case Id::random_k: return "random_k";
        case Id::top_k: return "top_k:" + std::to_string(k);
        case Id::sample_split: return "sample_split";
        case Id::omniscient: return "omniscient";
        case Id::greedy_prior: return "greedy_prior";
        case Id::ucb: return "ucb";
        case Id::succ_elim: return "succ_elim";
        case Id::two_stage_se: return "two_stage_se";
        case Id::two_stage_thompson: return "two_stage_thompson";
    }
    return "?";
}

Policy make_policy(const PolicyKind& kind) {
    using Id = PolicyKind::Id;
    switch (kind.id) {
        case Id::best_arm:
            return [](const StageData& data, const PolicyContext& ctx, Rng& rng) {
                return top_k_select(sort_by_empirical_mean(data, ctx.active, rng), 1);
            };
        case Id::top_k: {
            int k = kind.k;
            return [k](const StageData& data, const PolicyContext& ctx, Rng& rng) {
                // Clamped so the policy stays usable after multi-stage pruning.
                int kk = std::min(k, ctx.active.size());
                return top_k_select(sort_by_empirical_mean(data, ctx.active, rng), kk);
            };
        }
        case Id::random_k:
            return [](const StageData& data, const PolicyContext& ctx, Rng& rng) {
                return random_k_select(sort_by_empirical_mean(data, ctx.active, rng), rng);
            };
        case Id::sample_split:
            return [](const StageData& data, const PolicyContext& ctx, Rng& rng) {
                return sample_split_select(data, ctx, rng);
            };
        case Id::omniscient:
            return [](const StageData& data, const PolicyContext& ctx, Rng& rng) {
                if (!ctx.true_means) throw config_error("omniscient policy needs true means");
                return omniscient_select(sort_by_empirical_mean(data, ctx.active, rng),
                                         *ctx.true_means, ctx);
            };
        case Id::two_stage_se:
            return [](const StageData& data, const PolicyContext& ctx, Rng&) {
                return two_stage_se_select(data, ctx.active, ctx.delta);
            };
        case Id::greedy_prior:
            return [](const StageData& data, const PolicyContext& ctx, Rng& rng) {
                if (!ctx.prior || !ctx.model)
                    throw config_error("greedy_prior policy needs a prior and outcome model");
                Posterior post = posterior_update(*ctx.prior, *ctx.model, data);
                PosteriorDraws draws = sample_posterior(post, ctx.posterior_draws, rng);
                GreedyOptions opts;
                opts.simulate_stage2_noise = ctx.greedy_noise;
                opts.model = ctx.model;
                opts.rng = &rng;
                return greedy_prior_select(draws, ctx.active, ctx.s2_for_width, ctx.delta,
                                           ctx.bound, opts);
            };
        default:
            throw config_error("policy '" + kind.name() + "' is not a two-stage decision rule");
    }
}

TrialResult run_policy_trial(const PolicyKind& kind, const DesignSpec& design,
                             const PriorSpec* prior, const OutcomeModel& model,
                             const MeanVector& means, int posterior_draws, bool greedy_noise,
                             Rng& stage1_rng, Rng& policy_rng) {
    using Id = PolicyKind::Id;
    switch (kind.id) {
        case Id::single_stage:
            return run_single_stage(design, means, model, policy_rng);
        case Id::ucb:
            return ucb_run(means, model, design, policy_rng);
        case Id::succ_elim:
            return successive_elimination_run(means, model, design, policy_rng);
        case Id::two_stage_thompson:
            return thompson_two_stage_run(design, means, model, stage1_rng, policy_rng);
        default: {
            PolicyContext ctx;
            ctx.true_means = &means;
            ctx.prior = prior;
            ctx.model = &model;
            ctx.posterior_draws = posterior_draws;
            ctx.greedy_noise = greedy_noise;
            Policy policy = make_policy(kind);
            if (design.stages > 2)
                return run_multi_stage(design, policy, ctx, means, model, stage1_rng, policy_rng);
            return run_trial(design, policy, ctx, means, model, stage1_rng, policy_rng);
        }
    }
}

}  // namespace certlab
