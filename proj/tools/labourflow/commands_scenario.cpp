#include "commands.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <map>

namespace labourflow::cli {

namespace {

std::map<std::string, std::string> load_merge_map(const std::string& path) {
    CsvReader reader(path, "original_code,merged_code");
    std::map<std::string, std::string> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (out.count(f[0])) reader.fail("duplicate code \"" + f[0] + "\"");
        out[f[0]] = f[1];
    }
    if (out.empty()) throw InputError(path + ": empty merge map");
    return out;
}

std::string reallocation_csv(const NodeDemand& demand) {
    std::string out = "scenario,group,created,destroyed\n";
    for (std::size_t s = 0; s < demand.scenarios.size(); ++s) {
        for (const auto& row : reallocation_volume(demand, s)) {
            out += demand.scenarios[s] + "," + row.group + "," +
                   fmt_double(row.created) + "," + fmt_double(row.destroyed) +
                   "\n";
        }
    }
    return out;
}

} // namespace

void cmd_prepare_scenario(const PrepareScenarioOpts& opts) {
    SectorDemand sectors = load_sector_demand(opts.demand);
    OccupationMix mix = load_mix(opts.mix, opts.mix_year);
    if (!opts.merge_map.empty()) {
        mix = remap_mix(mix, load_merge_map(opts.merge_map));
    }
    NodeDemand demand = map_sector_to_occupation(sectors, mix);
    normalize_demand(demand);
    TargetDemand targets = interpolate_demand(demand, opts.steps_per_year);

    ScenarioSummary summary;
    summary.first_year = demand.first_year;
    summary.n_years = demand.n_years;
    summary.steps_per_year = opts.steps_per_year;
    summary.n_nodes = demand.index.size();
    summary.scenarios = demand.scenarios;
    std::size_t base = targets.scenario_pos(kBaselineScenario);
    double base_total_2018 = 0.0;
    for (std::size_t s = 0; s < demand.scenarios.size(); ++s) {
        std::vector<double> totals;
        for (int y = 0; y < demand.n_years; ++y) {
            double total = 0.0;
            for (std::size_t i = 0; i < demand.index.size(); ++i) {
                total += demand.at(s, y, i);
            }
            totals.push_back(total);
        }
        if (s == base) base_total_2018 = totals[0];
        summary.yearly_totals.push_back(std::move(totals));
    }
    for (double total : summary.yearly_totals[base]) {
        double dev = std::abs(total - base_total_2018) / base_total_2018;
        summary.baseline_total_max_rel_dev =
            std::max(summary.baseline_total_max_rel_dev, dev);
    }

    std::filesystem::create_directories(opts.out_dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(opts.out_dir) / name).string();
    };
    write_text_file(path("target_demand.csv"), target_demand_to_csv(targets));
    write_text_file(path("scenario_summary.json"),
                    scenario_summary_json(summary));
    write_text_file(path("reallocation.csv"), reallocation_csv(demand));
}

} // namespace labourflow::cli
