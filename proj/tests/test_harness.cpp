#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "certlab/harness.hpp"
#include "certlab/rng.hpp"

using namespace certlab;

TEST_SUITE_BEGIN("harness");

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.design.n = 4;
    cfg.design.T = 400;
    cfg.design.s1 = 200;
    cfg.design.s2 = 200;
    cfg.design.delta = 0.1;
    cfg.prior.kind = PriorKind::uniform01;
    cfg.outcome.kind = OutcomeKind::bernoulli;
    cfg.policies = {PolicyKind::parse("sample_split"), PolicyKind::parse("single_stage"),
                    PolicyKind::parse("best_arm")};
    cfg.seeds = 2;
    cfg.runs_per_seed = 3;
    cfg.master_seed = 99;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("derived seeds are stable, distinct and collision free") {
    CHECK(derive_seed(7, 1, 2, 3) == derive_seed(7, 1, 2, 3));
    CHECK(derive_seed(7, 0, 0, 0) != derive_seed(7, 0, 0, 1));
    CHECK(derive_seed(7, 0, 0, kStage1Tag) == derive_seed(7, 0, 0, kStage1Tag));

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1 << 20);
    for (std::uint64_t s = 0; s < 100; ++s)
        for (std::uint64_t r = 0; r < 100; ++r)
            for (std::uint64_t p = 0; p < 100; ++p)
                seen.insert(derive_seed(123456789ULL, s, r, p));
    CHECK(seen.size() == 1000000);
}

TEST_CASE("single replication aggregates to one row with zero se") {
    ExperimentConfig cfg = tiny_config();
    cfg.policies = {PolicyKind::parse("best_arm")};
    cfg.seeds = 1;
    cfg.runs_per_seed = 1;
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].count == 1);
    CHECK(res.rows[0].std_err == 0.0);
}

TEST_CASE("thread count does not change the result") {
    ExperimentConfig cfg = tiny_config();
    cfg.sweep = SweepAxis::s1_fraction;
    cfg.sweep_values = {0.3, 0.5};
    ExperimentResult a = run_experiment(cfg, 1);
    ExperimentResult b = run_experiment(cfg, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].policy == b.rows[i].policy);
        CHECK(a.rows[i].mean_norm_cert == b.rows[i].mean_norm_cert);
        CHECK(a.rows[i].std_err == b.rows[i].std_err);
    }
    CHECK(a.rows.size() == 6);  // 2 sweep values x 3 policies
}

TEST_CASE("identical configs export byte-identical files") {
    ExperimentConfig cfg = tiny_config();
    const auto dir = std::filesystem::temp_directory_path() / "certlab_test";
    std::filesystem::create_directories(dir);
    const std::string p1 = (dir / "a.csv").string();
    const std::string p2 = (dir / "b.csv").string();
    export_csv(run_experiment(cfg, 2).rows, p1);
    export_csv(run_experiment(cfg, 1).rows, p2);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).rfind("policy,sweep_axis,sweep_value,mean_norm_cert,std_err,count\n", 0) == 0);
}

TEST_CASE("json rows round-trip") {
    ExperimentConfig cfg = tiny_config();
    ExperimentResult res = run_experiment(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "certlab_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "rows.json").string();
    export_json(res.rows, path);
    const auto parsed = rows_from_json_file(path);
    REQUIRE(parsed.size() == res.rows.size());
    for (size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].policy == res.rows[i].policy);
        CHECK(parsed[i].sweep_value == res.rows[i].sweep_value);
        CHECK(parsed[i].mean_norm_cert == res.rows[i].mean_norm_cert);
        CHECK(parsed[i].std_err == res.rows[i].std_err);
        CHECK(parsed[i].count == res.rows[i].count);
    }
}

TEST_CASE("raw export carries one record per replication and policy") {
    ExperimentConfig cfg = tiny_config();
    ExperimentResult res = run_experiment(cfg, 1, true);
    CHECK(res.raw.size() == 2 * 3 * 3);  // seeds x runs x policies
    const auto dir = std::filesystem::temp_directory_path() / "certlab_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "raw.csv").string();
    export_raw_csv(res.raw, path);
    const std::string text = slurp(path);
    CHECK(text.rfind("policy,sweep_axis,sweep_value,seed,run,l,normalized\n", 0) == 0);
}

TEST_CASE("config json round-trip and validation errors") {
    ExperimentConfig cfg = tiny_config();
    ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.design.n == cfg.design.n);
    CHECK(back.design.s1 == cfg.design.s1);
    CHECK(back.policies.size() == cfg.policies.size());
    CHECK(back.master_seed == cfg.master_seed);

    // bound defaults follow the outcome family
    nlohmann::json gauss = cfg.to_json();
    gauss["outcome"] = {{"kind", "gaussian"}, {"sd", 1.0}};
    gauss["design"].erase("bound");
    CHECK(ExperimentConfig::from_json(gauss).design.bound.name() == "subgaussian");
    nlohmann::json bern = cfg.to_json();
    bern["design"].erase("bound");
    CHECK(ExperimentConfig::from_json(bern).design.bound.name() == "eq3");

    nlohmann::json bad = cfg.to_json();
    bad["policies"] = {"no_such_policy"};
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad), config_error);

    nlohmann::json bad2 = cfg.to_json();
    bad2["sweep"] = {{"axis", "s1_fraction"}, {"values", {1.5}}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad2), config_error);

    nlohmann::json bad3 = cfg.to_json();
    bad3["design"]["s1"] = 1;  // below one pull per arm
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad3), config_error);
}

TEST_CASE("greedy prior policy runs end to end through the harness") {
    ExperimentConfig cfg = tiny_config();
    cfg.prior.kind = PriorKind::beta;
    cfg.prior.alpha = 1.0;
    cfg.prior.beta = 2.0;
    cfg.policies = {PolicyKind::parse("greedy_prior"), PolicyKind::parse("sample_split")};
    cfg.posterior_draws = 50;
    ExperimentResult res = run_experiment(cfg, 2);
    CHECK(res.rows.size() == 2);
    for (const auto& row : res.rows) {
        CHECK(row.count == 6);
        CHECK(row.mean_norm_cert < 1.0);
    }
}

TEST_CASE("misspecification sweep changes the world but not the belief") {
    ExperimentConfig cfg = tiny_config();
    cfg.prior.kind = PriorKind::beta;
    cfg.policies = {PolicyKind::parse("greedy_prior")};
    cfg.sweep = SweepAxis::noise_mean;
    cfg.sweep_values = {0.0, 0.3};
    cfg.prior.misspec = MisspecNoise{0.0, 0.01};
    ExperimentResult res = run_experiment(cfg, 2);
    REQUIRE(res.rows.size() == 2);
    // shifted true means move the normalized certificate
    CHECK(res.rows[0].mean_norm_cert != res.rows[1].mean_norm_cert);
}

TEST_CASE("every figure preset has a config") {
    for (const auto& name : figure_names()) CHECK_NOTHROW(figure_config(name));
    CHECK_THROWS_AS(figure_config("fig99"), config_error);
    // the first-stage sweep preset aggregates 9 x 5 = 45 rows
    ExperimentConfig fig1 = figure_config("fig1");
    CHECK(fig1.sweep_values.size() == 9);
    CHECK(fig1.policies.size() == 5);
}

TEST_CASE("stage sweep routes through the multi-stage engine") {
    ExperimentConfig cfg = tiny_config();
    cfg.design.T = 600;
    cfg.design.s1 = 300;
    cfg.design.s2 = 300;
    cfg.policies = {PolicyKind::parse("sample_split")};
    cfg.sweep = SweepAxis::stages;
    cfg.sweep_values = {2, 3, 4};
    ExperimentResult res = run_experiment(cfg, 2);
    CHECK(res.rows.size() == 3);
}

TEST_SUITE_END();
