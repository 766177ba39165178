#include "commands.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/manifest.hpp"
#include "labourflow/metrics.hpp"
#include "labourflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

namespace labourflow::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct RunMetrics {
    std::vector<std::optional<double>> u_rate;
    std::vector<std::optional<double>> v_rate[3];
    std::vector<double> agg_u;
    std::vector<double> realloc;
    std::vector<double> e0;
};

RunMetrics compute_run_metrics(const Trajectory& traj) {
    RunMetrics m;
    StepWindow window = full_window(traj);
    m.u_rate = avg_unemployment_rate(traj, window);
    for (int k = 0; k < 3; ++k) {
        m.v_rate[k] = avg_vacancy_rate(traj, window, kAgeThresholdMonths[k]);
    }
    AggregateSeries agg = aggregate_series(traj);
    m.agg_u = std::move(agg.u_rate_per_step);
    m.realloc = std::move(agg.reallocation_per_year);
    m.e0.resize(traj.index.size());
    for (std::size_t i = 0; i < traj.index.size(); ++i) {
        m.e0[i] = traj.e(0, i);
    }
    return m;
}

// Mean across seeds; any missing seed value makes the node undefined.
std::vector<std::optional<double>> mean_rates(
    const std::vector<const std::vector<std::optional<double>>*>& per_seed) {
    const std::size_t n = per_seed.front()->size();
    std::vector<std::optional<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        bool ok = true;
        for (const auto* seed : per_seed) {
            if (!(*seed)[i]) {
                ok = false;
                break;
            }
            sum += *(*seed)[i];
        }
        if (ok) out[i] = sum / static_cast<double>(per_seed.size());
    }
    return out;
}

std::vector<double> mean_series(const std::vector<std::vector<double>*>& rows) {
    std::vector<double> out(rows.front()->size(), 0.0);
    for (const auto* row : rows) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += (*row)[k];
    }
    for (double& v : out) v /= static_cast<double>(rows.size());
    return out;
}

void check_same(bool ok, const std::string& what) {
    if (!ok) {
        throw InputError("baseline and scenario runs disagree on " + what);
    }
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : "nan";
}

} // namespace

void cmd_analyze(const AnalyzeOpts& opts) {
    namespace fs = std::filesystem;
    fs::path runs_dir(opts.runs_dir);
    SimManifest manifest =
        load_sim_manifest((runs_dir / "manifest.json").string());
    fs::path baseline_dir = runs_dir;
    SimManifest base_manifest = manifest;
    if (!opts.baseline_runs_dir.empty() &&
        fs::path(opts.baseline_runs_dir) != runs_dir) {
        baseline_dir = fs::path(opts.baseline_runs_dir);
        base_manifest =
            load_sim_manifest((baseline_dir / "manifest.json").string());
        const SimulationParams& a = manifest.params;
        const SimulationParams& b = base_manifest.params;
        check_same(a.sep_rate == b.sep_rate && a.open_rate == b.open_rate &&
                       a.sep_speed == b.sep_speed &&
                       a.open_speed == b.open_speed &&
                       a.steps_per_year == b.steps_per_year &&
                       a.scale == b.scale && a.seed == b.seed &&
                       a.mode == b.mode &&
                       a.apps_per_worker == b.apps_per_worker &&
                       a.burn_in_steps == b.burn_in_steps &&
                       a.init_unemployment == b.init_unemployment,
                   "simulation parameters");
        check_same(manifest.seeds == base_manifest.seeds, "seed lists");
        check_same(manifest.normalization == base_manifest.normalization,
                   "network normalization");
        check_same(manifest.first_year == base_manifest.first_year,
                   "first year");
        check_same(manifest.input_digests == base_manifest.input_digests,
                   "input digests");
    }

    if (opts.x_months != 3 && opts.x_months != 6 && opts.x_months != 12) {
        throw InputError("--x-months must be 3, 6, or 12");
    }
    int x_idx = opts.x_months == 3 ? 0 : opts.x_months == 6 ? 1 : 2;

    std::string targets_digest = digest_file(opts.targets_csv);
    auto digest_it = manifest.input_digests.find("targets");
    if (digest_it == manifest.input_digests.end() ||
        digest_it->second != targets_digest) {
        throw InputError("target demand file does not match the digest "
                         "recorded at simulate time");
    }
    TargetDemand targets =
        target_demand_from_csv(opts.targets_csv,
                               manifest.params.steps_per_year,
                               manifest.first_year);

    auto load_runs = [&](const SimManifest& m, const fs::path& dir,
                         const std::string& scenario) {
        std::vector<RunMetrics> per_seed;
        for (std::uint64_t seed : m.seeds) {
            const RunEntry* entry = nullptr;
            for (const auto& r : m.runs) {
                if (r.scenario == scenario && r.seed == seed) entry = &r;
            }
            if (!entry) {
                throw InputError("manifest has no run for scenario \"" +
                                 scenario + "\" seed " + std::to_string(seed));
            }
            if (entry->status != "ok") {
                throw InputError("run " + entry->file +
                                 " did not complete: " + entry->status);
            }
            std::string path = (dir / entry->file).string();
            std::string bytes = read_text_file(path);
            if (digest_bytes(bytes) != entry->digest) {
                throw InputError(path +
                                 ": contents do not match the manifest digest");
            }
            Trajectory traj = trajectory_from_csv(
                path, m.params.steps_per_year, m.first_year);
            if (!(traj.index.nodes() == targets.index.nodes())) {
                throw InputError(path + ": node set differs from the target "
                                        "demand file");
            }
            per_seed.push_back(compute_run_metrics(traj));
        }
        return per_seed;
    };

    bool baseline_listed =
        std::find(base_manifest.scenarios.begin(),
                  base_manifest.scenarios.end(),
                  kBaselineScenario) != base_manifest.scenarios.end();
    if (!baseline_listed) {
        throw InputError("no baseline runs found to compare against");
    }
    std::vector<RunMetrics> base_runs =
        load_runs(base_manifest, baseline_dir, kBaselineScenario);

    std::vector<std::string> shocks;
    for (const auto& s : manifest.scenarios) {
        if (s != kBaselineScenario) shocks.push_back(s);
    }

    const std::size_t n = targets.index.size();
    const std::size_t n_seeds = manifest.seeds.size();
    std::size_t base_pos = targets.scenario_pos(kBaselineScenario);
    int last_step = targets.total_steps() - 1;

    fs::create_directories(opts.out_dir);
    auto out_path = [&](const std::string& name) {
        return (fs::path(opts.out_dir) / name).string();
    };

    // Aggregate series across every scenario in the run set.
    std::string agg_csv = "scenario,timestep,u_rate\n";
    std::string realloc_csv = "scenario,year,reallocation\n";
    std::map<std::string, double> final_u;
    auto append_aggregates = [&](const std::string& scenario,
                                 std::vector<RunMetrics>& runs) {
        std::vector<std::vector<double>*> agg_rows, realloc_rows;
        for (auto& r : runs) {
            agg_rows.push_back(&r.agg_u);
            realloc_rows.push_back(&r.realloc);
        }
        std::vector<double> agg = mean_series(agg_rows);
        std::vector<double> realloc = mean_series(realloc_rows);
        for (std::size_t t = 0; t < agg.size(); ++t) {
            agg_csv += scenario + "," + std::to_string(t) + "," +
                       fmt_double(agg[t]) + "\n";
        }
        for (std::size_t y = 0; y < realloc.size(); ++y) {
            realloc_csv += scenario + "," +
                           std::to_string(manifest.first_year +
                                          static_cast<int>(y) + 1) +
                           "," + fmt_double(realloc[y]) + "\n";
        }
        int s_year = manifest.params.steps_per_year;
        double sum = 0.0;
        int from = std::max(0, static_cast<int>(agg.size()) - s_year);
        for (std::size_t t = static_cast<std::size_t>(from); t < agg.size();
             ++t) {
            sum += agg[t];
        }
        final_u[scenario] = sum / static_cast<double>(agg.size() -
                                                      static_cast<std::size_t>(
                                                          from));
    };
    append_aggregates(kBaselineScenario, base_runs);

    std::vector<double> base_e0 = [&] {
        std::vector<double> out(n, 0.0);
        for (const auto& r : base_runs) {
            for (std::size_t i = 0; i < n; ++i) out[i] += r.e0[i];
        }
        for (double& v : out) v /= static_cast<double>(n_seeds);
        return out;
    }();

    AnalysisSummary summary;
    summary.shock_scenarios = shocks;
    summary.n_seeds = n_seeds;
    summary.x_months = opts.x_months;
    std::map<std::string, std::map<std::string, VarianceDecomposition>>
        decompositions;

    for (const auto& scenario : shocks) {
        std::vector<RunMetrics> runs = load_runs(manifest, runs_dir, scenario);
        append_aggregates(scenario, runs);
        std::size_t s_pos = targets.scenario_pos(scenario);

        std::vector<std::optional<double>> u_mean = [&] {
            std::vector<const std::vector<std::optional<double>>*> rows;
            for (const auto& r : runs) rows.push_back(&r.u_rate);
            return mean_rates(rows);
        }();
        // Seed-paired deltas, in percentage points.
        std::vector<std::optional<double>> u_delta(n);
        std::vector<std::optional<double>> v_delta[3];
        std::vector<std::optional<double>> v_mean(n);
        for (int k = 0; k < 3; ++k) v_delta[k].assign(n, std::nullopt);
        for (std::size_t i = 0; i < n; ++i) {
            bool ok = true;
            double du = 0.0, dv[3] = {0.0, 0.0, 0.0}, vsum = 0.0;
            for (std::size_t r = 0; r < n_seeds; ++r) {
                const RunMetrics& scen = runs[r];
                const RunMetrics& base = base_runs[r];
                if (!scen.u_rate[i] || !base.u_rate[i]) ok = false;
                for (int k = 0; k < 3; ++k) {
                    if (!scen.v_rate[k][i] || !base.v_rate[k][i]) ok = false;
                }
                if (!ok) break;
                du += *scen.u_rate[i] - *base.u_rate[i];
                for (int k = 0; k < 3; ++k) {
                    dv[k] += *scen.v_rate[k][i] - *base.v_rate[k][i];
                }
                vsum += *scen.v_rate[x_idx][i];
            }
            if (!ok) continue;
            u_delta[i] = 100.0 * du / static_cast<double>(n_seeds);
            for (int k = 0; k < 3; ++k) {
                v_delta[k][i] = 100.0 * dv[k] / static_cast<double>(n_seeds);
            }
            v_mean[i] = vsum / static_cast<double>(n_seeds);
        }

        std::vector<std::optional<double>> demand_change(n);
        for (std::size_t i = 0; i < n; ++i) {
            double base_d = targets.at(base_pos, last_step, i);
            double scen_d = targets.at(s_pos, last_step, i);
            if (base_d > 0.0) {
                demand_change[i] = 100.0 * (scen_d / base_d - 1.0);
            }
        }

        // Outcome table.
        std::string table =
            "occupation,region,group,u_rate,u_delta_pp,v_rate,v_delta_pp,"
            "demand_change_pct,employment_2018\n";
        for (std::size_t i = 0; i < n; ++i) {
            const OccRegion& node = targets.index.node(i);
            table += node.occupation + "," + node.region + "," +
                     node.occupation.substr(0, 1) + "," + fmt_opt(u_mean[i]) +
                     "," + fmt_opt(u_delta[i]) + "," + fmt_opt(v_mean[i]) +
                     "," + fmt_opt(v_delta[x_idx][i]) + "," +
                     fmt_opt(demand_change[i]) + "," +
                     fmt_double(base_e0[i]) + "\n";
        }
        write_text_file(out_path("outcome_table_" + scenario + ".csv"), table);

        // Decompositions over nodes with defined deltas.
        {
            std::vector<double> u_vals, v_vals;
            std::vector<std::string> u_regions, u_occs, v_regions, v_occs;
            for (std::size_t i = 0; i < n; ++i) {
                const OccRegion& node = targets.index.node(i);
                if (u_delta[i]) {
                    u_vals.push_back(*u_delta[i]);
                    u_regions.push_back(node.region);
                    u_occs.push_back(node.occupation);
                }
                if (v_delta[x_idx][i]) {
                    v_vals.push_back(*v_delta[x_idx][i]);
                    v_regions.push_back(node.region);
                    v_occs.push_back(node.occupation);
                }
            }
            decompositions[scenario]["u_delta_pp"] =
                variance_decomposition(u_vals, u_regions, u_occs);
            decompositions[scenario]["v_delta_pp"] =
                variance_decomposition(v_vals, v_regions, v_occs);
            summary.undefined_nodes[scenario] = n - u_vals.size();
        }

        // Group x region heatmap and per-region table, weighted by
        // baseline employment.
        {
            struct Cell {
                double wu = 0.0, wv = 0.0, w_u_sum = 0.0, w_v_sum = 0.0;
                double employment = 0.0;
            };
            std::map<std::pair<std::string, std::string>, Cell> cells;
            std::map<std::string, Cell> region_cells;
            for (std::size_t i = 0; i < n; ++i) {
                const OccRegion& node = targets.index.node(i);
                double w = base_e0[i];
                Cell& c = cells[{node.occupation.substr(0, 1), node.region}];
                Cell& rc = region_cells[node.region];
                c.employment += w;
                rc.employment += w;
                if (u_delta[i]) {
                    c.wu += w * *u_delta[i];
                    c.w_u_sum += w;
                    rc.wu += w * *u_delta[i];
                    rc.w_u_sum += w;
                }
                if (v_delta[x_idx][i]) {
                    c.wv += w * *v_delta[x_idx][i];
                    c.w_v_sum += w;
                    rc.wv += w * *v_delta[x_idx][i];
                    rc.w_v_sum += w;
                }
            }
            std::string heat = "group,region,u_delta_pp,v_delta_pp,"
                               "employment_2018\n";
            for (const auto& [key, c] : cells) {
                heat += key.first + "," + key.second + "," +
                        fmt_double(c.w_u_sum > 0.0 ? c.wu / c.w_u_sum : kNan) +
                        "," +
                        fmt_double(c.w_v_sum > 0.0 ? c.wv / c.w_v_sum : kNan) +
                        "," + fmt_double(c.employment) + "\n";
            }
            write_text_file(out_path("heatmap_" + scenario + ".csv"), heat);
            std::string regions_table =
                "region,u_delta_pp,v_delta_pp,employment_2018\n";
            for (const auto& [region, c] : region_cells) {
                regions_table +=
                    region + "," +
                    fmt_double(c.w_u_sum > 0.0 ? c.wu / c.w_u_sum : kNan) +
                    "," +
                    fmt_double(c.w_v_sum > 0.0 ? c.wv / c.w_v_sum : kNan) +
                    "," + fmt_double(c.employment) + "\n";
            }
            write_text_file(out_path("region_table_" + scenario + ".csv"),
                            regions_table);
        }

        // Five most affected nodes by absolute unemployment delta.
        {
            std::vector<std::size_t> order;
            for (std::size_t i = 0; i < n; ++i) {
                if (u_delta[i]) order.push_back(i);
            }
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return std::abs(*u_delta[a]) >
                                        std::abs(*u_delta[b]);
                             });
            if (order.size() > 5) order.resize(5);
            std::string top =
                "occupation,region,group,u_delta_pp,v_delta_pp,"
                "demand_change_pct\n";
            for (std::size_t i : order) {
                const OccRegion& node = targets.index.node(i);
                top += node.occupation + "," + node.region + "," +
                       node.occupation.substr(0, 1) + "," +
                       fmt_opt(u_delta[i]) + "," + fmt_opt(v_delta[x_idx][i]) +
                       "," + fmt_opt(demand_change[i]) + "\n";
            }
            write_text_file(out_path("top5_" + scenario + ".csv"), top);
        }

        // Rank statistics for the summary.
        {
            std::vector<double> d_vals, u_vals;
            for (std::size_t i = 0; i < n; ++i) {
                if (demand_change[i] && u_delta[i]) {
                    d_vals.push_back(*demand_change[i]);
                    u_vals.push_back(*u_delta[i]);
                }
            }
            summary.spearman_demand_u_delta[scenario] =
                d_vals.size() >= 2 ? spearman(d_vals, u_vals) : std::nullopt;

            const char* labels[3] = {"3_vs_6", "6_vs_12", "3_vs_12"};
            const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
            for (int p = 0; p < 3; ++p) {
                std::vector<double> a, b;
                for (std::size_t i = 0; i < n; ++i) {
                    if (v_delta[pairs[p][0]][i] && v_delta[pairs[p][1]][i]) {
                        a.push_back(*v_delta[pairs[p][0]][i]);
                        b.push_back(*v_delta[pairs[p][1]][i]);
                    }
                }
                summary.vacancy_rank_stability[scenario][labels[p]] =
                    a.size() >= 2 ? spearman(a, b) : std::nullopt;
            }
        }
    }

    write_text_file(out_path("aggregate_series.csv"), agg_csv);
    write_text_file(out_path("reallocation_series.csv"), realloc_csv);
    write_text_file(out_path("variance_decomposition.json"),
                    decomposition_json(decompositions));
    summary.final_year_u_rate = final_u;
    write_text_file(out_path("analysis_summary.json"),
                    analysis_summary_json(summary));
}

} // namespace labourflow::cli
