#include "certlab/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "certlab/rng.hpp"

namespace certlab {

namespace {

std::vector<double> normalized_from_log(const std::vector<double>& logw) {
    double lmax = *std::max_element(logw.begin(), logw.end());
    std::vector<double> w(logw.size());
    double total = 0.0;
    for (size_t i = 0; i < logw.size(); ++i) {
        w[i] = std::isfinite(logw[i]) ? std::exp(logw[i] - lmax) : 0.0;
        total += w[i];
    }
    for (double& x : w) x /= total;
    return w;
}

}  // namespace

Posterior posterior_update(const PriorSpec& prior, const OutcomeModel& model,
                           const StageData& data) {
    prior.validate();
    const int n = data.n_arms();
    Posterior post;

    const bool beta_like =
        prior.kind == PriorKind::beta || prior.kind == PriorKind::uniform01;
    if (beta_like) {
        if (model.kind != OutcomeKind::bernoulli)
            throw config_error("beta prior updates need Bernoulli outcomes");
        const double a0 = prior.kind == PriorKind::beta ? prior.alpha : 1.0;
        const double b0 = prior.kind == PriorKind::beta ? prior.beta : 1.0;
        post.kind = Posterior::Kind::beta_bernoulli;
        post.alpha.resize(n);
        post.beta.resize(n);
        for (int i = 0; i < n; ++i) {
            const double succ = data.sums[i];
            const double fail = static_cast<double>(data.counts[i]) - succ;
            post.alpha[i] = a0 + succ;
            post.beta[i] = b0 + fail;
        }
        return post;
    }

    if (prior.kind == PriorKind::discrete) {
        post.kind = Posterior::Kind::discrete;
        post.support = prior.values;
        post.weights.assign(n, {});
        const size_t v = post.support.size();
        for (int i = 0; i < n; ++i) {
            std::vector<double> logw(v, 0.0);
            const double c = static_cast<double>(data.counts[i]);
            const double s = data.sums[i];
            if (c > 0) {
                for (size_t q = 0; q < v; ++q) {
                    const double mu = post.support[q];
                    if (model.kind == OutcomeKind::bernoulli) {
                        if (mu < 0.0 || mu > 1.0)
                            throw config_error("discrete prior value outside [0,1] for Bernoulli");
                        double lw = 0.0;
                        lw += (mu > 0.0) ? s * std::log(mu)
                                         : (s > 0 ? -std::numeric_limits<double>::infinity() : 0.0);
                        lw += (mu < 1.0) ? (c - s) * std::log(1.0 - mu)
                                         : (c - s > 0 ? -std::numeric_limits<double>::infinity() : 0.0);
                        logw[q] = lw;
                    } else {
                        // Gaussian likelihood from sufficient statistics, up to
                        // a mu-free constant.
                        logw[q] = -(c * mu * mu - 2.0 * mu * s) / (2.0 * model.sd * model.sd);
                    }
                }
            }
            post.weights[i] = normalized_from_log(logw);
        }
        return post;
    }

    throw config_error("posterior updates support beta/uniform01 and discrete priors only");
}

PosteriorDraws sample_posterior(const Posterior& post, int d, Rng& rng) {
    if (d < 1) throw config_error("posterior draw count must be at least 1");
    const int n = post.n_arms();
    PosteriorDraws draws;
    draws.d = d;
    draws.n = n;
    draws.values.resize(static_cast<size_t>(d) * n);

    if (post.kind == Posterior::Kind::beta_bernoulli) {
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < n; ++i)
                draws.at(j, i) = beta_sample(post.alpha[i], post.beta[i], rng);
        return draws;
    }

    // Per-arm cumulative weights, inverted with one uniform per cell.
    std::vector<std::vector<double>> cum(n);
    for (int i = 0; i < n; ++i) {
        cum[i].resize(post.support.size());
        double acc = 0.0;
        for (size_t q = 0; q < post.support.size(); ++q) {
            acc += post.weights[i][q];
            cum[i][q] = acc;
        }
        cum[i].back() = 1.0;
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i) {
            const double r = u(rng);
            const auto it = std::lower_bound(cum[i].begin(), cum[i].end(), r);
            draws.at(j, i) = post.support[it - cum[i].begin()];
        }
    return draws;
}

double set_objective(const PosteriorDraws& draws, const ArmSet& set) {
    double total = 0.0;
    for (int j = 0; j < draws.d; ++j) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a : set.arms) best = std::max(best, draws.at(j, a));
        total += best;
    }
    return total / draws.d;
}

double set_score(const PosteriorDraws& draws, const ArmSet& set, long long s2, double delta,
                 const BoundKind& bound) {
    return set_objective(draws, set) - half_width(set.size(), s2, delta, bound);
}

namespace {

// Empirical mean of m outcome draws centered on mu; stands in for the
// second-stage estimate when noise-aware scoring is requested.
double noisy_value(double mu, long long m, const OutcomeModel& model, Rng& rng) {
    double sum = 0.0;
    for (long long t = 0; t < m; ++t) sum += sample_outcome(mu, model, rng);
    return sum / static_cast<double>(m);
}

}  // namespace

GreedyChain greedy_chain(const PosteriorDraws& draws, const ArmSet& active) {
    const int d = draws.d;
    const int n_active = active.size();
    if (d < 1 || n_active < 1) throw config_error("greedy selection needs draws and arms");

    GreedyChain chain;
    chain.order.reserve(n_active);
    chain.objective.reserve(n_active);
    std::vector<double> cur_max(d, -std::numeric_limits<double>::infinity());
    std::vector<int> remaining = active.arms;
    for (int level = 1; level <= n_active; ++level) {
        int pick = -1;
        double pick_sum = -std::numeric_limits<double>::infinity();
        size_t pick_pos = 0;
        for (size_t p = 0; p < remaining.size(); ++p) {
            const int a = remaining[p];
            double sum = 0.0;
            for (int j = 0; j < d; ++j) sum += std::max(cur_max[j], draws.at(j, a));
            if (sum > pick_sum) {
                pick_sum = sum;
                pick = a;
                pick_pos = p;
            }
        }
        for (int j = 0; j < d; ++j) cur_max[j] = std::max(cur_max[j], draws.at(j, pick));
        remaining.erase(remaining.begin() + pick_pos);
        chain.order.push_back(pick);
        chain.objective.push_back(pick_sum / d);
    }
    return chain;
}

ArmSet greedy_prior_select(const PosteriorDraws& draws, const ArmSet& active, long long s2,
                           double delta, const BoundKind& bound, const GreedyOptions& opts) {
    const GreedyChain chain = greedy_chain(draws, active);
    const int d = draws.d;

    int best_k = 1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int level = 1; level <= static_cast<int>(chain.order.size()); ++level) {
        double g = chain.objective[level - 1];
        if (opts.simulate_stage2_noise) {
            if (!opts.model || !opts.rng)
                throw config_error("noise-aware greedy scoring needs a model and rng");
            const long long m = std::max<long long>(1, s2 / level);
            double total = 0.0;
            for (int j = 0; j < d; ++j) {
                double best = -std::numeric_limits<double>::infinity();
                for (int pos = 0; pos < level; ++pos)
                    best = std::max(best, noisy_value(draws.at(j, chain.order[pos]), m,
                                                      *opts.model, *opts.rng));
                total += best;
            }
            g = total / d;
        }
        const double score = g - half_width(level, s2, delta, bound);
        if (score > best_score) {
            best_score = score;
            best_k = level;
        }
    }
    return ArmSet(std::vector<int>(chain.order.begin(), chain.order.begin() + best_k));
}

ArmSet greedy_prior_select(const PosteriorDraws& draws, long long s2, double delta,
                           const BoundKind& bound, const GreedyOptions& opts) {
    return greedy_prior_select(draws, ArmSet::all(draws.n), s2, delta, bound, opts);
}

ArmSet brute_force_select(const PosteriorDraws& draws, long long s2, double delta,
                          const BoundKind& bound) {
    const int n = draws.n;
    const int d = draws.d;
    if (n > 20) throw config_error("brute-force subset search refuses n > 20");

    const std::uint64_t n_masks = 1ULL << n;
    std::vector<int> popcnt(n_masks, 0);
    ArmSet best;
    double best_score = -std::numeric_limits<double>::infinity();

    // Per-draw maxima built incrementally from the mask without its lowest bit.
    const bool cache = n_masks * static_cast<std::uint64_t>(d) <= (1ULL << 22);
    std::vector<std::vector<double>> maxvec;
    if (cache) maxvec.resize(n_masks);

    for (std::uint64_t mask = 1; mask < n_masks; ++mask) {
        const int low = std::countr_zero(mask);
        const std::uint64_t rest = mask & (mask - 1);
        popcnt[mask] = popcnt[rest] + 1;

        double g_sum = 0.0;
        if (cache) {
            auto& mv = maxvec[mask];
            mv.resize(d);
            if (rest == 0) {
                for (int j = 0; j < d; ++j) mv[j] = draws.at(j, low);
            } else {
                const auto& prev = maxvec[rest];
                for (int j = 0; j < d; ++j) mv[j] = std::max(prev[j], draws.at(j, low));
            }
            for (int j = 0; j < d; ++j) g_sum += mv[j];
        } else {
            for (int j = 0; j < d; ++j) {
                double best_v = -std::numeric_limits<double>::infinity();
                for (int a = 0; a < n; ++a)
                    if (mask & (1ULL << a)) best_v = std::max(best_v, draws.at(j, a));
                g_sum += best_v;
            }
        }
        const double score = g_sum / d - half_width(popcnt[mask], s2, delta, bound);
        if (score > best_score) {
            best_score = score;
            std::vector<int> arms;
            for (int a = 0; a < n; ++a)
                if (mask & (1ULL << a)) arms.push_back(a);
            best = ArmSet(std::move(arms));
        }
    }
    return best;
}

}  // namespace certlab
