#include "certlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include "certlab/rng.hpp"

namespace certlab {

namespace {

ExperimentConfig specialize(const ExperimentConfig& base, SweepAxis axis, double v) {
    ExperimentConfig cfg = base;
    switch (axis) {
        case SweepAxis::none:
            break;
        case SweepAxis::s1_fraction: {
            cfg.design.s1 = static_cast<int>(std::llround(v * base.design.T));
            cfg.design.s2 = base.design.T - cfg.design.s1;
            break;
        }
        case SweepAxis::T: {
            const double frac =
                static_cast<double>(base.design.s1) / static_cast<double>(base.design.T);
            cfg.design.T = static_cast<int>(std::llround(v));
            cfg.design.s1 = static_cast<int>(std::llround(frac * cfg.design.T));
            cfg.design.s2 = cfg.design.T - cfg.design.s1;
            break;
        }
        case SweepAxis::delta:
            cfg.design.delta = v;
            break;
        case SweepAxis::n:
            cfg.design.n = static_cast<int>(std::llround(v));
            break;
        case SweepAxis::beta:
            if (cfg.prior.kind != PriorKind::beta)
                throw config_error("beta sweep needs a beta prior");
            cfg.prior.beta = v;
            break;
        case SweepAxis::noise_mean: {
            MisspecNoise noise = cfg.prior.misspec.value_or(MisspecNoise{});
            noise.mean = v;
            cfg.prior.misspec = noise;
            break;
        }
        case SweepAxis::stages:
            cfg.design.stages = static_cast<int>(std::llround(v));
            break;
    }
    cfg.design.validate();
    return cfg;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int threads, bool keep_raw) {
    config.validate();
    const std::vector<double> sweep_values =
        config.sweep == SweepAxis::none ? std::vector<double>{0.0} : config.sweep_values;
    const std::string axis_name =
        config.sweep == SweepAxis::none ? "none" : sweep_axis_name(config.sweep);

    const int n_sweeps = static_cast<int>(sweep_values.size());
    const int n_policies = static_cast<int>(config.policies.size());
    const long long reps = static_cast<long long>(config.seeds) * config.runs_per_seed;
    const long long n_tasks = static_cast<long long>(n_sweeps) * reps;

    // Specialized configs are precomputed so config errors surface up front.
    std::vector<ExperimentConfig> cfgs;
    for (double v : sweep_values) cfgs.push_back(specialize(config, config.sweep, v));

    struct Cell {
        double l = 0.0;
        double score = 0.0;
        double normalized = 0.0;
    };
    std::vector<Cell> cells(static_cast<size_t>(n_tasks) * n_policies);

    std::atomic<long long> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (long long task = next.fetch_add(1); task < n_tasks; task = next.fetch_add(1)) {
            if (failed.load()) return;
            const int sv = static_cast<int>(task / reps);
            const long long rep = task % reps;
            const int seed_idx = static_cast<int>(rep / config.runs_per_seed);
            const int run_idx = static_cast<int>(rep % config.runs_per_seed);
            const ExperimentConfig& cfg = cfgs[sv];
            try {
                Rng mu_rng(derive_seed(cfg.master_seed, seed_idx, kMuTag, 0));
                const MeanVector mu =
                    draw_true_means(cfg.prior, cfg.design.n, cfg.outcome, mu_rng);
                const PriorSpec belief = cfg.prior.without_misspec();
                for (int ip = 0; ip < n_policies; ++ip) {
                    Rng stage1_rng(derive_seed(cfg.master_seed, seed_idx, run_idx, kStage1Tag));
                    Rng policy_rng(derive_seed(cfg.master_seed, seed_idx, run_idx, ip));
                    TrialResult r = run_policy_trial(cfg.policies[ip], cfg.design, &belief,
                                                     cfg.outcome, mu, cfg.posterior_draws,
                                                     cfg.greedy_noise, stage1_rng, policy_rng);
                    Cell& cell = cells[static_cast<size_t>(task) * n_policies + ip];
                    cell.l = r.certificate.l;
                    cell.score = r.score();
                    cell.normalized = r.normalized;
                }
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) {
                    char buf[256];
                    std::snprintf(buf, sizeof(buf),
                                  "replication failed at (seed=%d, run=%d, sweep=%s=%s): %s",
                                  seed_idx, run_idx, axis_name.c_str(),
                                  fmt(sweep_values[sv]).c_str(), e.what());
                    error_message = buf;
                }
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const int n_workers = std::max(1, threads);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(error_message);

    ExperimentResult result;
    for (int sv = 0; sv < n_sweeps; ++sv) {
        for (int ip = 0; ip < n_policies; ++ip) {
            double sum = 0.0;
            for (long long rep = 0; rep < reps; ++rep)
                sum += cells[(static_cast<size_t>(sv) * reps + rep) * n_policies + ip].score;
            const double mean = sum / static_cast<double>(reps);
            double ss = 0.0;
            for (long long rep = 0; rep < reps; ++rep) {
                const double d =
                    cells[(static_cast<size_t>(sv) * reps + rep) * n_policies + ip].score - mean;
                ss += d * d;
            }
            AggregateRow row;
            row.policy = config.policies[ip].name();
            row.sweep_axis = axis_name;
            row.sweep_value = sweep_values[sv];
            row.mean_norm_cert = mean;
            row.std_err = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) /
                                         std::sqrt(static_cast<double>(reps))
                                   : 0.0;
            row.count = reps;
            result.rows.push_back(row);
        }
    }

    if (keep_raw) {
        result.raw.reserve(static_cast<size_t>(n_tasks) * n_policies);
        for (int sv = 0; sv < n_sweeps; ++sv)
            for (long long rep = 0; rep < reps; ++rep)
                for (int ip = 0; ip < n_policies; ++ip) {
                    const Cell& cell = cells[(static_cast<size_t>(sv) * reps + rep) * n_policies + ip];
                    RawRecord rec;
                    rec.policy = config.policies[ip].name();
                    rec.sweep_axis = axis_name;
                    rec.sweep_value = sweep_values[sv];
                    rec.seed = static_cast<int>(rep / config.runs_per_seed);
                    rec.run = static_cast<int>(rep % config.runs_per_seed);
                    rec.l = cell.l;
                    rec.normalized = cell.normalized;
                    result.raw.push_back(rec);
                }
    }
    return result;
}

void export_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
    if (rows.empty()) throw std::runtime_error("no rows to export");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "policy,sweep_axis,sweep_value,mean_norm_cert,std_err,count\n";
    for (const auto& r : rows)
        out << r.policy << ',' << r.sweep_axis << ',' << fmt(r.sweep_value) << ','
            << fmt(r.mean_norm_cert) << ',' << fmt(r.std_err) << ',' << r.count << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void export_json(const std::vector<AggregateRow>& rows, const std::string& path) {
    if (rows.empty()) throw std::runtime_error("no rows to export");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"policy", r.policy},
                       {"sweep_axis", r.sweep_axis},
                       {"sweep_value", r.sweep_value},
                       {"mean_norm_cert", r.mean_norm_cert},
                       {"std_err", r.std_err},
                       {"count", r.count}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << arr.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<AggregateRow> rows_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json arr;
    in >> arr;
    std::vector<AggregateRow> rows;
    for (const auto& j : arr) {
        AggregateRow r;
        r.policy = j.at("policy").get<std::string>();
        r.sweep_axis = j.at("sweep_axis").get<std::string>();
        r.sweep_value = j.at("sweep_value").get<double>();
        r.mean_norm_cert = j.at("mean_norm_cert").get<double>();
        r.std_err = j.at("std_err").get<double>();
        r.count = j.at("count").get<long long>();
        rows.push_back(r);
    }
    return rows;
}

void export_raw_csv(const std::vector<RawRecord>& raw, const std::string& path) {
    if (raw.empty()) throw std::runtime_error("no raw records to export");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "policy,sweep_axis,sweep_value,seed,run,l,normalized\n";
    for (const auto& r : raw)
        out << r.policy << ',' << r.sweep_axis << ',' << fmt(r.sweep_value) << ',' << r.seed
            << ',' << r.run << ',' << fmt(r.l) << ',' << fmt(r.normalized) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string default_data_dir() {
    if (const char* env = std::getenv("CERTLAB_DATA_DIR")) return env;
#ifdef CERTLAB_SOURCE_DATA_DIR
    return CERTLAB_SOURCE_DATA_DIR;
#else
    return "data";
#endif
}

}  // namespace certlab
