#pragma once

#include "labourflow/manifest.hpp"
#include "labourflow/metrics.hpp"
#include "labourflow/network.hpp"
#include "labourflow/synthetic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace labourflow {

// JSON serialization for every artifact the tools emit. All writers
// produce sorted-key, newline-terminated documents so byte-identical
// reruns are possible.

std::string nodes_sidecar_json(const NodeIndex& index, Normalization norm,
                               const std::map<OccRegion, double>& wages);

struct NodesSidecar {
    NodeIndex index;
    Normalization normalization = Normalization::Source;
};
NodesSidecar load_nodes_sidecar(const std::string& path);

struct NetworkReport {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::size_t n_occupations = 0;
    std::size_t n_regions = 0;
    long long total_volume = 0;
    int merge_rounds = 0;
    std::size_t codes_before_merge = 0;
    std::size_t codes_after_merge = 0;
    std::optional<double> assortativity_region;
    std::optional<double> assortativity_broad_group;
    std::vector<std::string> zero_marginal_nodes;
    bool connected = false;
    Normalization normalization = Normalization::Source;
};
std::string network_report_json(const NetworkReport& r);

struct ScenarioSummary {
    int first_year = 0;
    int n_years = 0;
    int steps_per_year = 0;
    std::size_t n_nodes = 0;
    std::vector<std::string> scenarios;
    std::vector<std::vector<double>> yearly_totals; // [scenario][year]
    double baseline_total_max_rel_dev = 0.0;
};
std::string scenario_summary_json(const ScenarioSummary& s);

std::string sim_manifest_json(const SimManifest& m);
SimManifest load_sim_manifest(const std::string& path);

std::string timing_json(double wall_seconds, int threads);

// decompositions[scenario][metric] with metric in {"u_delta_pp",
// "v_delta_pp"}.
std::string decomposition_json(
    const std::map<std::string, std::map<std::string, VarianceDecomposition>>&
        decompositions);

struct AnalysisSummary {
    std::vector<std::string> shock_scenarios;
    std::size_t n_seeds = 0;
    int x_months = 6;
    std::map<std::string, double> final_year_u_rate; // per scenario
    std::map<std::string, std::optional<double>> spearman_demand_u_delta;
    std::map<std::string, std::map<std::string, std::optional<double>>>
        vacancy_rank_stability; // per scenario, "3_vs_6" etc.
    std::map<std::string, std::size_t> undefined_nodes;
};
std::string analysis_summary_json(const AnalysisSummary& s);

std::string calibration_json(const SimulationParams& fitted, double target,
                             double achieved, int iterations, bool converged);

std::string synthetic_manifest_json(const SyntheticSpec& spec,
                                    const std::map<std::string, std::string>&
                                        file_digests);

// Flat {"key": scalar} object for --config files; scalars come back as
// strings exactly as written (numbers unquoted, strings unescaped).
// A top-level "params" object, as written by simulate manifests and
// calibrate output, takes the place of the whole document.
std::map<std::string, std::string> read_flat_json_object(
    const std::string& path);

} // namespace labourflow
