#pragma once

#include <string>
#include <vector>

#include "certlab/config.hpp"

namespace certlab {

struct AggregateRow {
    std::string policy;
    std::string sweep_axis;
    double sweep_value = 0.0;
    double mean_norm_cert = 0.0;
    double std_err = 0.0;  // sample sd / sqrt(count); 0 when count == 1
    long long count = 0;
};

struct RawRecord {
    std::string policy;
    std::string sweep_axis;
    double sweep_value = 0.0;
    int seed = 0;
    int run = 0;
    double l = 0.0;
    double normalized = 0.0;  // NaN when undefined
};

struct ExperimentResult {
    std::vector<AggregateRow> rows;
    std::vector<RawRecord> raw;  // filled only when requested
};

// Runs every (sweep value x seed x run x policy) replication. Seeds draw mu,
// runs draw trial data; policies at the same (seed, run) share the stage-1
// substream. Deterministic for a fixed config regardless of thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 1,
                                bool keep_raw = false);

void export_csv(const std::vector<AggregateRow>& rows, const std::string& path);
void export_json(const std::vector<AggregateRow>& rows, const std::string& path);
void export_raw_csv(const std::vector<RawRecord>& raw, const std::string& path);
std::vector<AggregateRow> rows_from_json_file(const std::string& path);

// Figure-analog presets (fig1..fig7, fig_box, fig_delta, fig_multistage,
// fig_n, fig_dist) writing <out_dir>/<name>.csv.
std::vector<std::string> figure_names();
ExperimentConfig figure_config(const std::string& name);  // base config (single-run figures)
void run_figure(const std::string& name, const std::string& out_dir, int threads,
                std::uint64_t master_seed, const std::string& data_dir = "");

// Directory holding the bundled effect-size list; overridable for tests.
std::string default_data_dir();

}  // namespace certlab
