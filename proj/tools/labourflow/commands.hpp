#pragma once

#include "labourflow/params.hpp"
#include "labourflow/synthetic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace labourflow::cli {

struct BuildNetworkOpts {
    std::string transitions;
    std::string hierarchy;
    std::string regions;
    std::string wages; // optional CSV "occupation,region,mean_wage"
    std::string out_dir = ".";
    long long min_presence = 1;
    std::string normalization = "source";
    bool no_friction = false;
};
void cmd_build_network(const BuildNetworkOpts& opts);

struct PrepareScenarioOpts {
    std::string demand;
    std::string mix;
    std::string merge_map; // optional
    std::string out_dir = ".";
    int steps_per_year = 12;
    std::optional<int> mix_year;
};
void cmd_prepare_scenario(const PrepareScenarioOpts& opts);

struct SimulateOpts {
    std::string network_csv;
    std::string nodes_json;
    std::string targets_csv;
    std::string out_dir = ".";
    SimulationParams params;
    std::vector<std::string> scenarios; // empty = every scenario present
    int n_seeds = 1;
    int first_year = 2018;
    int threads = 0;          // 0 = hardware concurrency
    bool no_friction = false; // replace the network with a complete one
};
void cmd_simulate(const SimulateOpts& opts);

struct AnalyzeOpts {
    std::string runs_dir;
    std::string baseline_runs_dir; // optional; defaults to runs_dir
    std::string targets_csv;
    std::string out_dir = ".";
    int x_months = 6;
};
void cmd_analyze(const AnalyzeOpts& opts);

struct GenSyntheticOpts {
    SyntheticSpec spec;
    std::string out_dir = ".";
};
void cmd_gen_synthetic(const GenSyntheticOpts& opts);

struct CalibrateOpts {
    std::string network_csv;
    std::string nodes_json;
    std::string targets_csv;
    std::string out_file = "calibration.json";
    SimulationParams params;
    double target_rate = 0.08;
    double tolerance = 1e-4;
    int max_iterations = 60;
    int first_year = 2018;
};
void cmd_calibrate(const CalibrateOpts& opts);

} // namespace labourflow::cli
