#pragma once

#include "labourflow/nodes.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace labourflow {

// Scenario id that anchors demand normalization and delta reporting.
inline constexpr const char* kBaselineScenario = "baseline";

// Sector-level demand paths per scenario, loaded from
// "scenario,sector,region,year,demand". Each (scenario, sector, region)
// series must cover every year of the file's range, and the baseline
// must cover at least the union of all shock-scenario keys.
struct SectorDemand {
    std::vector<std::string> scenarios; // sorted; contains "baseline"
    std::vector<int> years;             // consecutive ascending
    std::map<std::tuple<std::string, std::string, std::string, int>, double>
        values; // (scenario, sector, region, year) -> demand

    int first_year() const { return years.front(); }
    int n_years() const { return static_cast<int>(years.size()); }
};

SectorDemand load_sector_demand(const std::string& path);

// Occupation shares per (sector, region). Loaded from
// "sector,region,occupation,share" or the same with a trailing "year"
// column; with a year column the shares are averaged over years unless
// one year is selected.
struct OccupationMix {
    std::map<std::pair<std::string, std::string>, std::map<std::string, double>>
        shares;
};

OccupationMix load_mix(const std::string& path, std::optional<int> year);

// Rewrites mix occupations through a code mapping, summing shares that
// land on the same code. Codes missing from the map fall back to their
// longest mapped prefix; no prefix at all is an error.
OccupationMix remap_mix(const OccupationMix& mix,
                        const std::map<std::string, std::string>& code_map);

// Yearly labour demand per occupation-region node and scenario.
struct NodeDemand {
    std::vector<std::string> scenarios;
    NodeIndex index;
    int first_year = 0;
    int n_years = 0;
    // demand[s][y * N + i]
    std::vector<std::vector<double>> demand;

    double at(std::size_t s, int year_idx, std::size_t node) const {
        return demand[s][static_cast<std::size_t>(year_idx) * index.size() +
                         node];
    }
};

// demand(node, year, scenario) = Σ_sector sector_demand × share. Every
// (sector, region) appearing in the demand file must exist in the mix.
NodeDemand map_sector_to_occupation(const SectorDemand& sectors,
                                    const OccupationMix& mix);

// Rescales every scenario-year slice by (baseline base-year total) /
// (baseline same-year total), which pins the baseline economy-wide
// total to its base-year value. Zero baseline total in any year is an
// error.
void normalize_demand(NodeDemand& d);

// Per-timestep targets: yearly anchors at the first step of each year,
// the final year anchoring the final step, linear in between. A run
// over Y years spans (Y-1)*steps_per_year + 1 steps.
struct TargetDemand {
    std::vector<std::string> scenarios;
    NodeIndex index;
    int first_year = 0;
    int n_years = 0;
    int steps_per_year = 0;
    // target[s][t * N + i]
    std::vector<std::vector<double>> target;

    int total_steps() const { return (n_years - 1) * steps_per_year + 1; }
    double at(std::size_t s, int t, std::size_t node) const {
        return target[s][static_cast<std::size_t>(t) * index.size() + node];
    }
    std::size_t scenario_pos(const std::string& id) const;
};

TargetDemand interpolate_demand(const NodeDemand& d, int steps_per_year);

// Jobs created (demand gain) and destroyed (demand loss) between the
// first and last year, summed per 1-digit occupation group.
struct GroupReallocation {
    std::string group;
    double created = 0.0;
    double destroyed = 0.0;
};

std::vector<GroupReallocation> reallocation_volume(const NodeDemand& d,
                                                   std::size_t scenario_pos);

// Serialization: "scenario,occupation,region,timestep,target".
std::string target_demand_to_csv(const TargetDemand& t);
TargetDemand target_demand_from_csv(const std::string& path,
                                    int steps_per_year, int first_year);

} // namespace labourflow
