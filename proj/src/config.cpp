#include "certlab/config.hpp"

#include <fstream>

namespace certlab {

namespace {

using nlohmann::json;

PriorSpec prior_from_json(const json& j) {
    PriorSpec p;
    const std::string kind = j.value("kind", "uniform01");
    if (kind == "uniform01") {
        p.kind = PriorKind::uniform01;
    } else if (kind == "beta") {
        p.kind = PriorKind::beta;
        p.alpha = j.value("alpha", 1.0);
        p.beta = j.value("beta", 1.0);
    } else if (kind == "discrete") {
        p.kind = PriorKind::discrete;
        if (j.contains("csv"))
            p.values = load_effect_sizes_csv(j.at("csv").get<std::string>());
        else if (j.contains("values"))
            p.values = j.at("values").get<std::vector<double>>();
        else
            throw config_error("discrete prior needs 'values' or 'csv'");
    } else if (kind == "point") {
        p.kind = PriorKind::point;
        p.point_means = j.value("means", std::vector<double>{});
    } else {
        throw config_error("unknown prior kind: " + kind);
    }
    if (j.contains("misspec")) {
        MisspecNoise noise;
        noise.mean = j.at("misspec").value("mean", 0.0);
        noise.variance = j.at("misspec").value("variance", 0.0);
        p.misspec = noise;
    }
    p.validate();
    return p;
}

json prior_to_json(const PriorSpec& p) {
    json j;
    switch (p.kind) {
        case PriorKind::uniform01: j["kind"] = "uniform01"; break;
        case PriorKind::beta:
            j["kind"] = "beta";
            j["alpha"] = p.alpha;
            j["beta"] = p.beta;
            break;
        case PriorKind::discrete:
            j["kind"] = "discrete";
            j["values"] = p.values;
            break;
        case PriorKind::point:
            j["kind"] = "point";
            j["means"] = p.point_means;
            break;
    }
    if (p.misspec) j["misspec"] = {{"mean", p.misspec->mean}, {"variance", p.misspec->variance}};
    return j;
}

OutcomeModel outcome_from_json(const json& j) {
    OutcomeModel m;
    const std::string kind = j.value("kind", "bernoulli");
    if (kind == "bernoulli") {
        m.kind = OutcomeKind::bernoulli;
    } else if (kind == "gaussian") {
        m.kind = OutcomeKind::gaussian;
        m.sd = j.value("sd", 1.0);
    } else {
        throw config_error("unknown outcome kind: " + kind);
    }
    m.validate();
    return m;
}

}  // namespace

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "none") return SweepAxis::none;
    if (name == "s1_fraction") return SweepAxis::s1_fraction;
    if (name == "T") return SweepAxis::T;
    if (name == "delta") return SweepAxis::delta;
    if (name == "n") return SweepAxis::n;
    if (name == "beta") return SweepAxis::beta;
    if (name == "noise_mean") return SweepAxis::noise_mean;
    if (name == "stages") return SweepAxis::stages;
    throw config_error("unknown sweep axis: " + name);
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::none: return "none";
        case SweepAxis::s1_fraction: return "s1_fraction";
        case SweepAxis::T: return "T";
        case SweepAxis::delta: return "delta";
        case SweepAxis::n: return "n";
        case SweepAxis::beta: return "beta";
        case SweepAxis::noise_mean: return "noise_mean";
        case SweepAxis::stages: return "stages";
    }
    return "none";
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    try {
        if (j.contains("outcome")) cfg.outcome = outcome_from_json(j.at("outcome"));
        if (j.contains("design")) {
            const auto& d = j.at("design");
            cfg.design.n = d.value("n", cfg.design.n);
            cfg.design.T = d.value("T", cfg.design.T);
            if (d.contains("s1")) {
                cfg.design.s1 = d.at("s1").get<int>();
                cfg.design.s2 = d.value("s2", cfg.design.T - cfg.design.s1);
            } else if (d.contains("s1_fraction")) {
                cfg.design.s1 = static_cast<int>(d.at("s1_fraction").get<double>() * cfg.design.T);
                cfg.design.s2 = cfg.design.T - cfg.design.s1;
            } else {
                cfg.design.s1 = cfg.design.T / 2;
                cfg.design.s2 = cfg.design.T - cfg.design.s1;
            }
            cfg.design.delta = d.value("delta", 0.1);
            cfg.design.stages = d.value("stages", 2);
            cfg.design.last_stage_only = d.value("last_stage_only", true);
            if (d.contains("bound"))
                cfg.design.bound = BoundKind::from_name(d.at("bound").get<std::string>());
            else
                cfg.design.bound = cfg.outcome.kind == OutcomeKind::gaussian
                                       ? BoundKind::subgaussian()
                                       : BoundKind::eq3_hoeffding();
            cfg.design.bound.bonferroni = d.value("bonferroni", false);
        }
        if (j.contains("prior")) cfg.prior = prior_from_json(j.at("prior"));
        if (j.contains("policies"))
            for (const auto& name : j.at("policies"))
                cfg.policies.push_back(PolicyKind::parse(name.get<std::string>()));
        cfg.seeds = j.value("seeds", cfg.seeds);
        cfg.runs_per_seed = j.value("runs_per_seed", cfg.runs_per_seed);
        if (j.contains("sweep")) {
            cfg.sweep = sweep_axis_from_name(j.at("sweep").value("axis", "none"));
            cfg.sweep_values = j.at("sweep").value("values", std::vector<double>{});
        }
        cfg.master_seed = j.value("master_seed", cfg.master_seed);
        cfg.posterior_draws = j.value("posterior_draws", cfg.posterior_draws);
        cfg.greedy_noise = j.value("greedy_noise", false);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["design"] = {{"n", design.n},
                   {"T", design.T},
                   {"s1", design.s1},
                   {"s2", design.s2},
                   {"delta", design.delta},
                   {"bound", design.bound.name()},
                   {"bonferroni", design.bound.bonferroni},
                   {"stages", design.stages},
                   {"last_stage_only", design.last_stage_only}};
    j["prior"] = prior_to_json(prior);
    j["outcome"] = outcome.kind == OutcomeKind::bernoulli
                       ? nlohmann::json{{"kind", "bernoulli"}}
                       : nlohmann::json{{"kind", "gaussian"}, {"sd", outcome.sd}};
    std::vector<std::string> names;
    for (const auto& p : policies) names.push_back(p.name());
    j["policies"] = names;
    j["seeds"] = seeds;
    j["runs_per_seed"] = runs_per_seed;
    if (sweep != SweepAxis::none)
        j["sweep"] = {{"axis", sweep_axis_name(sweep)}, {"values", sweep_values}};
    j["master_seed"] = master_seed;
    j["posterior_draws"] = posterior_draws;
    if (greedy_noise) j["greedy_noise"] = true;
    return j;
}

void ExperimentConfig::validate() const {
    design.validate();
    prior.validate();
    outcome.validate();
    if (policies.empty()) throw config_error("config lists no policies");
    if (seeds < 1 || runs_per_seed < 1)
        throw config_error("seeds and runs_per_seed must be at least 1");
    if (posterior_draws < 1) throw config_error("posterior_draws must be at least 1");
    if (sweep != SweepAxis::none && sweep_values.empty())
        throw config_error("sweep axis set but no sweep values given");
    for (double v : sweep_values) {
        switch (sweep) {
            case SweepAxis::s1_fraction:
                if (v <= 0.0 || v >= 1.0) throw config_error("s1_fraction values must be in (0,1)");
                break;
            case SweepAxis::T:
                if (v < design.n) throw config_error("swept T smaller than arm count");
                break;
            case SweepAxis::delta:
                if (v <= 0.0 || v >= 1.0) throw config_error("delta values must be in (0,1)");
                break;
            case SweepAxis::n:
                if (v < 1) throw config_error("swept n must be at least 1");
                break;
            case SweepAxis::beta:
                if (v <= 0.0) throw config_error("beta values must be positive");
                break;
            case SweepAxis::stages:
                if (v < 1 || v > 5) throw config_error("stages values must lie in [1,5]");
                break;
            default:
                break;
        }
    }
}

}  // namespace certlab
