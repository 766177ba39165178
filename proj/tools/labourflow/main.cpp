#include "commands.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/params.hpp"

#include "CLI11.hpp"

#include <climits>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace {

using labourflow::InputError;
using Setter = std::function<void(const std::string&)>;
using Registry = std::map<std::string, Setter>;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_flag(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw InputError("config: \"" + key + "\" expects true or false");
}

void reg_real(Registry& reg, const std::string& key, double& field) {
    reg[key] = [key, &field](const std::string& v) {
        field = labourflow::parse_real(v, "config \"" + key + "\"");
    };
}

void reg_int(Registry& reg, const std::string& key, int& field) {
    reg[key] = [key, &field](const std::string& v) {
        field = labourflow::parse_int(v, "config \"" + key + "\"");
    };
}

void reg_ll(Registry& reg, const std::string& key, long long& field) {
    reg[key] = [key, &field](const std::string& v) {
        field = labourflow::parse_count(v, "config \"" + key + "\"");
    };
}

void reg_u64(Registry& reg, const std::string& key, std::uint64_t& field) {
    reg[key] = [key, &field](const std::string& v) {
        long long raw = labourflow::parse_count(v, "config \"" + key + "\"");
        if (raw < 0) {
            throw InputError("config \"" + key + "\": must be non-negative");
        }
        field = static_cast<std::uint64_t>(raw);
    };
}

void reg_string(Registry& reg, const std::string& key, std::string& field) {
    reg[key] = [&field](const std::string& v) { field = v; };
}

void reg_bool(Registry& reg, const std::string& key, bool& field) {
    reg[key] = [key, &field](const std::string& v) {
        field = parse_flag(v, key);
    };
}

void reg_strings(Registry& reg, const std::string& key,
                 std::vector<std::string>& field) {
    reg[key] = [&field](const std::string& v) { field = split_commas(v); };
}

// Shared simulation-parameter options; the mode travels as a string and
// is converted when the subcommand runs.
void add_param_options(CLI::App* sub, labourflow::SimulationParams& p,
                       std::string& mode, Registry& reg) {
    sub->add_option("--sep-rate", p.sep_rate,
                    "Spontaneous separation probability per step");
    sub->add_option("--open-rate", p.open_rate,
                    "Spontaneous vacancy-opening probability per step");
    sub->add_option("--sep-speed", p.sep_speed,
                    "Demand-gap response of separations");
    sub->add_option("--open-speed", p.open_speed,
                    "Demand-gap response of vacancy openings");
    sub->add_option("--steps-per-year", p.steps_per_year,
                    "Timesteps per calendar year");
    sub->add_option("--scale", p.scale,
                    "Population divisor applied to demand targets");
    sub->add_option("--seed", p.seed, "Base random seed");
    sub->add_option("--mode", mode, "stochastic or meanfield");
    sub->add_option("--apps-per-worker", p.apps_per_worker,
                    "Applications per job seeker per step");
    sub->add_option("--burn-in", p.burn_in_steps,
                    "Warm-up steps before recording starts");
    sub->add_option("--init-unemployment", p.init_unemployment,
                    "Initial unemployed share of employment");
    reg_real(reg, "sep-rate", p.sep_rate);
    reg_real(reg, "open-rate", p.open_rate);
    reg_real(reg, "sep-speed", p.sep_speed);
    reg_real(reg, "open-speed", p.open_speed);
    reg_int(reg, "steps-per-year", p.steps_per_year);
    reg_real(reg, "scale", p.scale);
    reg_u64(reg, "seed", p.seed);
    reg_string(reg, "mode", mode);
    reg_int(reg, "apps-per-worker", p.apps_per_worker);
    reg_int(reg, "burn-in", p.burn_in_steps);
    reg_real(reg, "init-unemployment", p.init_unemployment);
}

void require_option(const std::string& value, const std::string& flag) {
    if (value.empty()) {
        throw InputError("missing required option " + flag);
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace labourflow;
    using namespace labourflow::cli;

    CLI::App app{"Labour-market flow simulator on occupational mobility "
                 "networks"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON file with defaults for the subcommand's options");

    std::map<std::string, Registry> registries;

    // build-network
    BuildNetworkOpts build_opts;
    {
        CLI::App* sub = app.add_subcommand(
            "build-network",
            "Build a mobility network from job transition records");
        Registry& reg = registries["build-network"];
        sub->add_option("--config", config_path, "JSON defaults file");
        sub->add_option("--transitions", build_opts.transitions,
                        "Transition counts CSV");
        sub->add_option("--hierarchy", build_opts.hierarchy,
                        "Occupation hierarchy CSV");
        sub->add_option("--regions", build_opts.regions, "Region list CSV");
        sub->add_option("--wages", build_opts.wages,
                        "Optional mean-wage CSV carried into nodes.json");
        sub->add_option("--out", build_opts.out_dir, "Output directory");
        sub->add_option("--min-presence", build_opts.min_presence,
                        "Minimum transition volume per occupation and region");
        sub->add_option("--normalization", build_opts.normalization,
                        "source or destination");
        sub->add_flag("--no-friction", build_opts.no_friction,
                      "Emit a complete network instead of the observed one");
        reg_string(reg, "transitions", build_opts.transitions);
        reg_string(reg, "hierarchy", build_opts.hierarchy);
        reg_string(reg, "regions", build_opts.regions);
        reg_string(reg, "wages", build_opts.wages);
        reg_string(reg, "out", build_opts.out_dir);
        reg_ll(reg, "min-presence", build_opts.min_presence);
        reg_string(reg, "normalization", build_opts.normalization);
        reg_bool(reg, "no-friction", build_opts.no_friction);
        sub->callback([&] {
            require_option(build_opts.transitions, "--transitions");
            require_option(build_opts.hierarchy, "--hierarchy");
            require_option(build_opts.regions, "--regions");
            cmd_build_network(build_opts);
        });
    }

    // prepare-scenario
    PrepareScenarioOpts scen_opts;
    int mix_year_raw = INT_MIN;
    {
        CLI::App* sub = app.add_subcommand(
            "prepare-scenario",
            "Turn sector demand scenarios into per-node step targets");
        Registry& reg = registries["prepare-scenario"];
        sub->add_option("--config", config_path, "JSON defaults file");
        sub->add_option("--demand", scen_opts.demand, "Sector demand CSV");
        sub->add_option("--mix", scen_opts.mix, "Sector-occupation mix CSV");
        sub->add_option("--merge-map", scen_opts.merge_map,
                        "Occupation merge map from build-network");
        sub->add_option("--out", scen_opts.out_dir, "Output directory");
        sub->add_option("--steps-per-year", scen_opts.steps_per_year,
                        "Timesteps per calendar year");
        sub->add_option("--mix-year", mix_year_raw,
                        "Use one mix year instead of the all-year average");
        reg_string(reg, "demand", scen_opts.demand);
        reg_string(reg, "mix", scen_opts.mix);
        reg_string(reg, "merge-map", scen_opts.merge_map);
        reg_string(reg, "out", scen_opts.out_dir);
        reg_int(reg, "steps-per-year", scen_opts.steps_per_year);
        reg_int(reg, "mix-year", mix_year_raw);
        sub->callback([&] {
            require_option(scen_opts.demand, "--demand");
            require_option(scen_opts.mix, "--mix");
            if (mix_year_raw != INT_MIN) scen_opts.mix_year = mix_year_raw;
            cmd_prepare_scenario(scen_opts);
        });
    }

    // simulate
    SimulateOpts sim_opts;
    std::string sim_mode = "stochastic";
    {
        CLI::App* sub = app.add_subcommand(
            "simulate", "Run the worker-vacancy dynamics over scenarios");
        Registry& reg = registries["simulate"];
        sub->add_option("--config", config_path, "JSON defaults file");
        sub->add_option("--network", sim_opts.network_csv, "Network edge CSV");
        sub->add_option("--nodes", sim_opts.nodes_json, "Node sidecar JSON");
        sub->add_option("--targets", sim_opts.targets_csv,
                        "Target demand CSV from prepare-scenario");
        sub->add_option("--out", sim_opts.out_dir, "Output directory");
        sub->add_option("--scenario", sim_opts.scenarios,
                        "Scenario to run (repeatable; default: all)");
        sub->add_option("--seeds", sim_opts.n_seeds,
                        "Number of consecutive seeds starting at --seed");
        sub->add_option("--first-year", sim_opts.first_year,
                        "Calendar year of timestep 0");
        sub->add_option("--threads", sim_opts.threads,
                        "Worker threads (0 = all cores)");
        sub->add_flag("--no-friction", sim_opts.no_friction,
                      "Replace the network with a complete one");
        add_param_options(sub, sim_opts.params, sim_mode, reg);
        reg_string(reg, "network", sim_opts.network_csv);
        reg_string(reg, "nodes", sim_opts.nodes_json);
        reg_string(reg, "targets", sim_opts.targets_csv);
        reg_string(reg, "out", sim_opts.out_dir);
        reg_strings(reg, "scenario", sim_opts.scenarios);
        reg_int(reg, "seeds", sim_opts.n_seeds);
        reg_int(reg, "first-year", sim_opts.first_year);
        reg_int(reg, "threads", sim_opts.threads);
        reg_bool(reg, "no-friction", sim_opts.no_friction);
        sub->callback([&] {
            require_option(sim_opts.network_csv, "--network");
            require_option(sim_opts.nodes_json, "--nodes");
            require_option(sim_opts.targets_csv, "--targets");
            sim_opts.params.mode = sim_mode_from_name(sim_mode);
            cmd_simulate(sim_opts);
        });
    }

    // analyze
    AnalyzeOpts an_opts;
    {
        CLI::App* sub = app.add_subcommand(
            "analyze", "Compare scenario runs against the baseline");
        Registry& reg = registries["analyze"];
        sub->add_option("--config", config_path, "JSON defaults file");
        sub->add_option("--runs", an_opts.runs_dir,
                        "Directory written by simulate");
        sub->add_option("--baseline-runs", an_opts.baseline_runs_dir,
                        "Directory holding the baseline runs, if separate");
        sub->add_option("--targets", an_opts.targets_csv,
                        "Target demand CSV the runs were driven by");
        sub->add_option("--out", an_opts.out_dir, "Output directory");
        sub->add_option("--x-months", an_opts.x_months,
                        "Vacancy-age threshold: 3, 6, or 12");
        reg_string(reg, "runs", an_opts.runs_dir);
        reg_string(reg, "baseline-runs", an_opts.baseline_runs_dir);
        reg_string(reg, "targets", an_opts.targets_csv);
        reg_string(reg, "out", an_opts.out_dir);
        reg_int(reg, "x-months", an_opts.x_months);
        sub->callback([&] {
            require_option(an_opts.runs_dir, "--runs");
            require_option(an_opts.targets_csv, "--targets");
            cmd_analyze(an_opts);
        });
    }

    // gen-synthetic
    GenSyntheticOpts gen_opts;
    {
        CLI::App* sub = app.add_subcommand(
            "gen-synthetic", "Generate a synthetic desk-scale input set");
        Registry& reg = registries["gen-synthetic"];
        SyntheticSpec& s = gen_opts.spec;
        sub->add_option("--config", config_path, "JSON defaults file");
        sub->add_option("--out", gen_opts.out_dir, "Output directory");
        sub->add_option("--occupations", s.n_occupations,
                        "Number of leaf occupations");
        sub->add_option("--regions", s.n_regions, "Number of regions");
        sub->add_option("--depth", s.hierarchy_depth,
                        "Digits in leaf occupation codes");
        sub->add_option("--within-region", s.within_region,
                        "Extra edge mass for same-region pairs");
        sub->add_option("--within-occupation", s.within_occupation,
                        "Extra edge mass for same-occupation pairs");
        sub->add_option("--baseline-edge", s.baseline_edge,
                        "Edge mass shared by every pair");
        sub->add_option("--edge-volume", s.mean_edge_volume,
                        "Scale of mean transition counts");
        sub->add_option("--base-demand", s.base_demand,
                        "Demand scale per sector-region");
        sub->add_option("--growth", s.baseline_growth,
                        "Baseline yearly demand growth");
        sub->add_option("--shock-rate", s.shock_rate,
                        "Half-width of per-sector growth offsets");
        sub->add_option("--shock-scenario", s.shock_scenarios,
                        "Shock scenario id (repeatable)");
        sub->add_option("--first-year", s.first_year, "First calendar year");
        sub->add_option("--years", s.n_years, "Number of years");
        sub->add_option("--seed", s.seed, "Generator seed");
        reg_string(reg, "out", gen_opts.out_dir);
        reg_int(reg, "occupations", s.n_occupations);
        reg_int(reg, "regions", s.n_regions);
        reg_int(reg, "depth", s.hierarchy_depth);
        reg_real(reg, "within-region", s.within_region);
        reg_real(reg, "within-occupation", s.within_occupation);
        reg_real(reg, "baseline-edge", s.baseline_edge);
        reg_real(reg, "edge-volume", s.mean_edge_volume);
        reg_real(reg, "base-demand", s.base_demand);
        reg_real(reg, "growth", s.baseline_growth);
        reg_real(reg, "shock-rate", s.shock_rate);
        reg_strings(reg, "shock-scenario", s.shock_scenarios);
        reg_int(reg, "first-year", s.first_year);
        reg_int(reg, "years", s.n_years);
        reg_u64(reg, "seed", s.seed);
        sub->callback([&] { cmd_gen_synthetic(gen_opts); });
    }

    // calibrate
    CalibrateOpts cal_opts;
    std::string cal_mode = "stochastic";
    {
        CLI::App* sub = app.add_subcommand(
            "calibrate",
            "Fit separation/opening rates to a target unemployment rate");
        Registry& reg = registries["calibrate"];
        sub->add_option("--config", config_path, "JSON defaults file");
        sub->add_option("--network", cal_opts.network_csv, "Network edge CSV");
        sub->add_option("--nodes", cal_opts.nodes_json, "Node sidecar JSON");
        sub->add_option("--targets", cal_opts.targets_csv,
                        "Target demand CSV from prepare-scenario");
        sub->add_option("--out", cal_opts.out_file, "Output JSON file");
        sub->add_option("--target-rate", cal_opts.target_rate,
                        "Baseline unemployment rate to match");
        sub->add_option("--tolerance", cal_opts.tolerance,
                        "Acceptable absolute rate error");
        sub->add_option("--max-iterations", cal_opts.max_iterations,
                        "Bisection iteration cap");
        sub->add_option("--first-year", cal_opts.first_year,
                        "Calendar year of timestep 0");
        add_param_options(sub, cal_opts.params, cal_mode, reg);
        reg_string(reg, "network", cal_opts.network_csv);
        reg_string(reg, "nodes", cal_opts.nodes_json);
        reg_string(reg, "targets", cal_opts.targets_csv);
        reg_string(reg, "out", cal_opts.out_file);
        reg_real(reg, "target-rate", cal_opts.target_rate);
        reg_real(reg, "tolerance", cal_opts.tolerance);
        reg_int(reg, "max-iterations", cal_opts.max_iterations);
        reg_int(reg, "first-year", cal_opts.first_year);
        sub->callback([&] {
            require_option(cal_opts.network_csv, "--network");
            require_option(cal_opts.nodes_json, "--nodes");
            require_option(cal_opts.targets_csv, "--targets");
            cal_opts.params.mode = sim_mode_from_name(cal_mode);
            cmd_calibrate(cal_opts);
        });
    }

    try {
        // Config files act as defaults, so they must be applied before
        // the real parse lets explicit flags win.
        std::string sub_name, cfg;
        for (int i = 1; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                cfg = argv[++i];
            } else if (arg.rfind("--config=", 0) == 0) {
                cfg = arg.substr(9);
            } else if (sub_name.empty() && !arg.empty() && arg[0] != '-') {
                sub_name = arg;
            }
        }
        if (!cfg.empty() && registries.count(sub_name)) {
            const Registry& reg = registries[sub_name];
            for (const auto& [key, value] : read_flat_json_object(cfg)) {
                auto it = reg.find(key);
                if (it == reg.end()) {
                    throw InputError("config \"" + key +
                                     "\" is not an option of " + sub_name);
                }
                it->second(value);
            }
        }
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ConstraintError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
