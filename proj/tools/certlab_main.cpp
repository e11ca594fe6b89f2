#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "certlab/harness.hpp"
#include "certlab/verification.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitVerificationFailure = 3;

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& format, bool raw, int threads, bool bonferroni,
                 bool have_master, std::uint64_t master_seed) {
    certlab::ExperimentConfig cfg = certlab::ExperimentConfig::from_file(config_path);
    if (have_master) cfg.master_seed = master_seed;
    if (bonferroni) cfg.design.bound.bonferroni = true;
    certlab::ExperimentResult res = certlab::run_experiment(cfg, threads, raw);
    if (out_path.empty()) {
        for (const auto& r : res.rows)
            std::printf("%-22s %s=%-8g mean=%.6f se=%.6f n=%lld\n", r.policy.c_str(),
                        r.sweep_axis.c_str(), r.sweep_value, r.mean_norm_cert, r.std_err,
                        r.count);
        return 0;
    }
    if (raw)
        certlab::export_raw_csv(res.raw, out_path);
    else if (format == "json")
        certlab::export_json(res.rows, out_path);
    else
        certlab::export_csv(res.rows, out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& out_path,
               std::uint64_t master_seed, int threads) {
    std::vector<certlab::BoundReport> reports;
    if (!instance_path.empty()) {
        std::ifstream in(instance_path);
        if (!in) throw certlab::config_error("cannot open instance file: " + instance_path);
        nlohmann::json j;
        in >> j;
        certlab::EnumInstance inst;
        inst.means = j.at("means").get<std::vector<double>>();
        inst.pulls_per_arm = j.value("pulls_per_arm", 2);
        inst.s2 = j.value("s2", 8);
        inst.delta = j.value("delta", 0.1);
        if (j.contains("bound"))
            inst.bound = certlab::BoundKind::from_name(j.at("bound").get<std::string>());
        certlab::Rng rng(master_seed);
        reports.push_back(certlab::verify_lemma2(inst, j.value("policies", 100), rng));
        if (inst.n() <= 2 && inst.pulls_per_arm <= 2)
            reports.push_back(certlab::verify_theorem1(inst));
    } else {
        reports = certlab::run_all_verifications(master_seed, threads);
    }

    nlohmann::json arr = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        arr.push_back(r.to_json());
        all_pass = all_pass && r.pass;
        std::printf("[%s] %-32s value=%.6g bound=%.6g margin=%.3g\n", r.pass ? "PASS" : "FAIL",
                    r.claim.c_str(), r.value, r.bound, r.margin);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << arr.dump(2) << '\n';
        std::printf("wrote %s\n", out_path.c_str());
    } else {
        std::cout << arr.dump(2) << '\n';
    }
    return all_pass ? 0 : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage trial certificate simulator"};
    app.require_subcommand(1);
    const int hw_threads = std::max(1u, std::thread::hardware_concurrency());

    // simulate
    std::string config_path, out_path, format = "csv";
    bool raw = false, bonferroni = false;
    int threads = hw_threads;
    std::uint64_t master_seed = 0;
    auto* sim = app.add_subcommand("simulate", "Run the experiment described by a config file");
    sim->add_option("--config", config_path, "JSON experiment config")->required();
    sim->add_option("--out", out_path, "output file (stdout summary when omitted)");
    sim->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_flag("--raw", raw, "export per-replication records instead of aggregates");
    sim->add_flag("--bonferroni", bonferroni, "divide delta by k inside the width");
    sim->add_option("--threads", threads, "worker threads");
    auto* sim_seed = sim->add_option("--master-seed", master_seed, "override the config seed");

    // verify
    std::string instance_path, verify_out;
    std::uint64_t verify_seed = 20260801ULL;
    int verify_threads = hw_threads;
    auto* ver = app.add_subcommand("verify", "Check the formal claims numerically");
    ver->add_option("--instance", instance_path, "JSON enumeration instance to check");
    ver->add_option("--out", verify_out, "write the JSON report array here");
    ver->add_option("--master-seed", verify_seed, "seed for the randomized checks");
    ver->add_option("--threads", verify_threads, "worker threads");

    // figure
    std::string fig_name, fig_out = "figures", fig_data;
    std::uint64_t fig_seed = 20260801ULL;
    int fig_threads = hw_threads;
    auto* fig = app.add_subcommand("figure", "Produce the data table for one figure preset");
    fig->add_option("name", fig_name, "figure preset")
        ->required()
        ->check(CLI::IsMember(certlab::figure_names()));
    fig->add_option("--out", fig_out, "output directory");
    fig->add_option("--master-seed", fig_seed, "master seed");
    fig->add_option("--threads", fig_threads, "worker threads");
    fig->add_option("--data", fig_data, "directory with the bundled effect sizes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(config_path, out_path, format, raw, threads, bonferroni,
                                sim_seed->count() > 0, master_seed);
        if (ver->parsed()) return cmd_verify(instance_path, verify_out, verify_seed, verify_threads);
        if (fig->parsed()) {
            certlab::run_figure(fig_name, fig_out, fig_threads, fig_seed, fig_data);
            std::printf("wrote %s/%s.csv\n", fig_out.c_str(), fig_name.c_str());
            return 0;
        }
    } catch (const certlab::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
