#include "labourflow/jsonio.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"

#include "json.hpp"

namespace labourflow {

using nlohmann::json;

namespace {

json opt_number(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_file(const std::string& path) {
    std::string text = read_text_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError(path + ": invalid JSON");
    return j;
}

json params_to_json(const SimulationParams& p) {
    json j;
    j["sep-rate"] = p.sep_rate;
    j["open-rate"] = p.open_rate;
    j["sep-speed"] = p.sep_speed;
    j["open-speed"] = p.open_speed;
    j["steps-per-year"] = p.steps_per_year;
    j["scale"] = p.scale;
    j["seed"] = p.seed;
    j["mode"] = sim_mode_name(p.mode);
    j["apps-per-worker"] = p.apps_per_worker;
    j["burn-in"] = p.burn_in_steps;
    j["init-unemployment"] = p.init_unemployment;
    return j;
}

SimulationParams params_from_json(const json& j, const std::string& path) {
    SimulationParams p;
    try {
        p.sep_rate = j.at("sep-rate").get<double>();
        p.open_rate = j.at("open-rate").get<double>();
        p.sep_speed = j.at("sep-speed").get<double>();
        p.open_speed = j.at("open-speed").get<double>();
        p.steps_per_year = j.at("steps-per-year").get<int>();
        p.scale = j.at("scale").get<double>();
        p.seed = j.at("seed").get<std::uint64_t>();
        p.mode = sim_mode_from_name(j.at("mode").get<std::string>());
        p.apps_per_worker = j.at("apps-per-worker").get<int>();
        p.burn_in_steps = j.at("burn-in").get<int>();
        p.init_unemployment = j.at("init-unemployment").get<double>();
    } catch (const json::exception& e) {
        throw InputError(path + ": bad parameter block: " + e.what());
    }
    return p;
}

} // namespace

std::string nodes_sidecar_json(const NodeIndex& index, Normalization norm,
                               const std::map<OccRegion, double>& wages) {
    json nodes = json::array();
    for (std::size_t i = 0; i < index.size(); ++i) {
        const OccRegion& n = index.node(i);
        json entry;
        entry["occupation"] = n.occupation;
        entry["region"] = n.region;
        entry["broad_group"] = n.occupation.substr(0, 1);
        auto it = wages.find(n);
        entry["mean_wage"] = it == wages.end() ? json(nullptr) : json(it->second);
        nodes.push_back(entry);
    }
    json j;
    j["normalization"] = normalization_name(norm);
    j["nodes"] = nodes;
    return dump(j);
}

NodesSidecar load_nodes_sidecar(const std::string& path) {
    json j = parse_file(path);
    NodesSidecar out;
    try {
        out.normalization =
            normalization_from_name(j.at("normalization").get<std::string>());
        std::vector<OccRegion> nodes;
        for (const auto& entry : j.at("nodes")) {
            nodes.push_back({entry.at("occupation").get<std::string>(),
                             entry.at("region").get<std::string>()});
        }
        out.index = NodeIndex(std::move(nodes));
    } catch (const json::exception& e) {
        throw InputError(path + ": bad node sidecar: " + e.what());
    }
    if (out.index.size() == 0) throw InputError(path + ": empty node list");
    return out;
}

std::string network_report_json(const NetworkReport& r) {
    json j;
    j["nodes"] = r.n_nodes;
    j["edges"] = r.n_edges;
    j["occupations"] = r.n_occupations;
    j["regions"] = r.n_regions;
    j["total_transition_volume"] = r.total_volume;
    j["merge_rounds"] = r.merge_rounds;
    j["codes_before_merge"] = r.codes_before_merge;
    j["codes_after_merge"] = r.codes_after_merge;
    j["assortativity_region"] = opt_number(r.assortativity_region);
    j["assortativity_broad_group"] = opt_number(r.assortativity_broad_group);
    j["zero_marginal_nodes"] = r.zero_marginal_nodes;
    j["connected"] = r.connected;
    j["normalization"] = normalization_name(r.normalization);
    return dump(j);
}

std::string scenario_summary_json(const ScenarioSummary& s) {
    json totals;
    for (std::size_t i = 0; i < s.scenarios.size(); ++i) {
        json per_year;
        for (int y = 0; y < s.n_years; ++y) {
            per_year[std::to_string(s.first_year + y)] =
                s.yearly_totals[i][static_cast<std::size_t>(y)];
        }
        totals[s.scenarios[i]] = per_year;
    }
    json j;
    j["first_year"] = s.first_year;
    j["n_years"] = s.n_years;
    j["steps_per_year"] = s.steps_per_year;
    j["nodes"] = s.n_nodes;
    j["scenarios"] = s.scenarios;
    j["normalized_yearly_totals"] = totals;
    j["baseline_total_max_rel_dev"] = s.baseline_total_max_rel_dev;
    return dump(j);
}

std::string sim_manifest_json(const SimManifest& m) {
    json j;
    j["params"] = params_to_json(m.params);
    j["normalization"] = normalization_name(m.normalization);
    j["first_year"] = m.first_year;
    j["scenarios"] = m.scenarios;
    j["seeds"] = m.seeds;
    json digests;
    for (const auto& [label, digest] : m.input_digests) {
        digests[label] = digest;
    }
    j["input_digests"] = digests;
    json runs = json::array();
    for (const auto& r : m.runs) {
        json e;
        e["scenario"] = r.scenario;
        e["seed"] = r.seed;
        e["file"] = r.file;
        e["digest"] = r.digest;
        e["status"] = r.status;
        runs.push_back(e);
    }
    j["runs"] = runs;
    return dump(j);
}

SimManifest load_sim_manifest(const std::string& path) {
    json j = parse_file(path);
    SimManifest m;
    try {
        m.params = params_from_json(j.at("params"), path);
        m.normalization =
            normalization_from_name(j.at("normalization").get<std::string>());
        m.first_year = j.at("first_year").get<int>();
        m.scenarios = j.at("scenarios").get<std::vector<std::string>>();
        m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        for (const auto& [label, digest] : j.at("input_digests").items()) {
            m.input_digests[label] = digest.get<std::string>();
        }
        for (const auto& e : j.at("runs")) {
            RunEntry r;
            r.scenario = e.at("scenario").get<std::string>();
            r.seed = e.at("seed").get<std::uint64_t>();
            r.file = e.at("file").get<std::string>();
            r.digest = e.at("digest").get<std::string>();
            r.status = e.at("status").get<std::string>();
            m.runs.push_back(r);
        }
    } catch (const json::exception& e) {
        throw InputError(path + ": bad manifest: " + e.what());
    }
    return m;
}

std::string timing_json(double wall_seconds, int threads) {
    json j;
    j["wall_time_seconds"] = wall_seconds;
    j["threads"] = threads;
    return dump(j);
}

namespace {

json decomposition_to_json(const VarianceDecomposition& d) {
    json j;
    j["total"] = d.total;
    j["between_region"] = d.between_region;
    j["between_occupation"] = d.between_occupation;
    j["residual"] = d.residual;
    j["additivity_gap"] = d.additivity_gap;
    j["n_values"] = d.n_values;
    if (d.total > 0.0) {
        j["share_between_region"] = d.between_region / d.total;
        j["share_between_occupation"] = d.between_occupation / d.total;
        j["share_residual"] = d.residual / d.total;
    } else {
        j["share_between_region"] = nullptr;
        j["share_between_occupation"] = nullptr;
        j["share_residual"] = nullptr;
    }
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

} // namespace

std::string decomposition_json(
    const std::map<std::string, std::map<std::string, VarianceDecomposition>>&
        decompositions) {
    json j;
    for (const auto& [scenario, metrics] : decompositions) {
        json per;
        for (const auto& [metric, d] : metrics) {
            per[metric] = decomposition_to_json(d);
        }
        j[scenario] = per;
    }
    return dump(j);
}

std::string analysis_summary_json(const AnalysisSummary& s) {
    json j;
    j["shock_scenarios"] = s.shock_scenarios;
    j["n_seeds"] = s.n_seeds;
    j["x_months"] = s.x_months;
    json final_u;
    for (const auto& [scen, rate] : s.final_year_u_rate) final_u[scen] = rate;
    j["final_year_unemployment_rate"] = final_u;
    json sp;
    for (const auto& [scen, rho] : s.spearman_demand_u_delta) {
        sp[scen] = opt_number(rho);
    }
    j["spearman_demand_change_vs_u_delta"] = sp;
    json stab;
    for (const auto& [scen, pairs] : s.vacancy_rank_stability) {
        json per;
        for (const auto& [label, rho] : pairs) per[label] = opt_number(rho);
        stab[scen] = per;
    }
    j["vacancy_delta_rank_stability"] = stab;
    json undef;
    for (const auto& [scen, count] : s.undefined_nodes) undef[scen] = count;
    j["undefined_nodes"] = undef;
    return dump(j);
}

std::string calibration_json(const SimulationParams& fitted, double target,
                             double achieved, int iterations, bool converged) {
    json j;
    j["params"] = params_to_json(fitted);
    j["target_unemployment_rate"] = target;
    j["achieved_unemployment_rate"] = achieved;
    j["iterations"] = iterations;
    j["converged"] = converged;
    return dump(j);
}

std::string synthetic_manifest_json(const SyntheticSpec& spec,
                                    const std::map<std::string, std::string>&
                                        file_digests) {
    json j;
    j["n_occupations"] = spec.n_occupations;
    j["n_regions"] = spec.n_regions;
    j["hierarchy_depth"] = spec.hierarchy_depth;
    j["within_region"] = spec.within_region;
    j["within_occupation"] = spec.within_occupation;
    j["baseline_edge"] = spec.baseline_edge;
    j["mean_edge_volume"] = spec.mean_edge_volume;
    j["base_demand"] = spec.base_demand;
    j["baseline_growth"] = spec.baseline_growth;
    j["shock_rate"] = spec.shock_rate;
    j["shock_scenarios"] = spec.shock_scenarios;
    j["first_year"] = spec.first_year;
    j["n_years"] = spec.n_years;
    j["seed"] = spec.seed;
    json digests;
    for (const auto& [name, digest] : file_digests) digests[name] = digest;
    j["file_digests"] = digests;
    return dump(j);
}

std::map<std::string, std::string> read_flat_json_object(
    const std::string& path) {
    json j = parse_file(path);
    if (!j.is_object()) {
        throw InputError(path + ": config must be a JSON object");
    }
    // Manifest and calibration files keep their option values under a
    // "params" object; accept those files directly.
    if (j.contains("params") && j.at("params").is_object()) {
        j = j.at("params");
    }
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : j.items()) {
        if (value.is_string()) {
            out[key] = value.get<std::string>();
        } else if (value.is_boolean()) {
            out[key] = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_integer()) {
            out[key] = std::to_string(value.get<long long>());
        } else if (value.is_number_unsigned()) {
            out[key] = std::to_string(value.get<unsigned long long>());
        } else if (value.is_number_float()) {
            out[key] = fmt_double(value.get<double>());
        } else {
            throw InputError(path + ": config key \"" + key +
                             "\" has a non-scalar value");
        }
    }
    return out;
}

} // namespace labourflow
