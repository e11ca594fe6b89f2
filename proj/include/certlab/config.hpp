#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "certlab/arm_model.hpp"
#include "certlab/policies.hpp"
#include "certlab/trial_engine.hpp"

namespace certlab {

enum class SweepAxis { none, s1_fraction, T, delta, n, beta, noise_mean, stages };

SweepAxis sweep_axis_from_name(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

struct ExperimentConfig {
    DesignSpec design;
    PriorSpec prior;
    OutcomeModel outcome;
    std::vector<PolicyKind> policies;
    int seeds = 15;
    int runs_per_seed = 100;
    SweepAxis sweep = SweepAxis::none;
    std::vector<double> sweep_values;
    std::uint64_t master_seed = 20260801ULL;
    int posterior_draws = 200;
    bool greedy_noise = false;

    // Throws config_error with a description of the offending field.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;

    void validate() const;
};

}  // namespace certlab
