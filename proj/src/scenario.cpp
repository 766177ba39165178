#include "labourflow/scenario.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace labourflow {

SectorDemand load_sector_demand(const std::string& path) {
    CsvReader reader(path, "scenario,sector,region,year,demand");
    SectorDemand out;
    std::vector<std::string> f;
    std::set<std::string> scen_set;
    std::set<int> year_set;
    while (reader.next(f)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        validate_identifier(f[0], "scenario id");
        validate_identifier(f[1], "sector id");
        validate_identifier(f[2], "region id");
        int year = parse_int(f[3], ctx);
        double demand = parse_real(f[4], ctx);
        if (demand < 0.0) reader.fail("negative demand");
        auto key = std::make_tuple(f[0], f[1], f[2], year);
        if (out.values.count(key)) {
            reader.fail("duplicate entry for (" + f[0] + "," + f[1] + "," +
                        f[2] + "," + f[3] + ")");
        }
        out.values[key] = demand;
        scen_set.insert(f[0]);
        year_set.insert(year);
    }
    if (out.values.empty()) throw InputError(path + ": no demand rows");
    if (!scen_set.count(kBaselineScenario)) {
        throw InputError(path + ": missing \"baseline\" scenario");
    }
    out.scenarios.assign(scen_set.begin(), scen_set.end());
    out.years.assign(year_set.begin(), year_set.end());
    for (std::size_t k = 1; k < out.years.size(); ++k) {
        if (out.years[k] != out.years[k - 1] + 1) {
            throw InputError(path + ": gap in year sequence between " +
                             std::to_string(out.years[k - 1]) + " and " +
                             std::to_string(out.years[k]));
        }
    }
    // Each mentioned (scenario, sector, region) series must span every
    // year; the baseline must cover every shock scenario's keys.
    std::set<std::tuple<std::string, std::string, std::string>> series;
    for (const auto& [key, v] : out.values) {
        (void)v;
        series.insert({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }
    for (const auto& [scen, sector, region] : series) {
        for (int year : out.years) {
            if (!out.values.count({scen, sector, region, year})) {
                throw InputError(path + ": scenario " + scen + " misses (" +
                                 sector + "," + region + ") in year " +
                                 std::to_string(year));
            }
        }
        if (scen != kBaselineScenario &&
            !out.values.count({kBaselineScenario, sector, region,
                               out.years.front()})) {
            throw InputError(path + ": baseline does not cover (" + sector +
                             "," + region + ") required by " + scen);
        }
    }
    return out;
}

OccupationMix load_mix(const std::string& path, std::optional<int> year) {
    std::string head = read_text_file(path);
    std::size_t eol = head.find('\n');
    std::string header = head.substr(0, eol == std::string::npos ? head.size()
                                                                 : eol);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    bool yearly = header == "sector,region,occupation,share,year";
    if (!yearly && header != "sector,region,occupation,share") {
        throw InputError(path + ": unexpected mix header \"" + header + "\"");
    }
    if (year && !yearly) {
        throw InputError(path + ": mix has no year column to select from");
    }
    CsvReader reader(path, header);
    std::vector<std::string> f;
    // (sector, region, occupation) -> (sum of shares, row count)
    std::map<std::tuple<std::string, std::string, std::string>,
             std::pair<double, int>> acc;
    std::set<int> years_seen;
    while (reader.next(f)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        validate_identifier(f[0], "sector id");
        validate_identifier(f[1], "region id");
        validate_identifier(f[2], "occupation code");
        double share = parse_real(f[3], ctx);
        if (share < 0.0) reader.fail("negative share");
        if (yearly) {
            int y = parse_int(f[4], ctx);
            years_seen.insert(y);
            if (year && y != *year) continue;
        }
        auto& slot = acc[{f[0], f[1], f[2]}];
        slot.first += share;
        slot.second += 1;
    }
    if (acc.empty()) {
        if (year) {
            throw InputError(path + ": no mix rows for year " +
                             std::to_string(*year));
        }
        throw InputError(path + ": no mix rows");
    }
    OccupationMix mix;
    for (const auto& [key, slot] : acc) {
        double value = slot.first / slot.second;
        mix.shares[{std::get<0>(key), std::get<1>(key)}][std::get<2>(key)] +=
            value;
    }
    for (const auto& [sr, dist] : mix.shares) {
        double sum = 0.0;
        for (const auto& [occ, share] : dist) {
            (void)occ;
            sum += share;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw InputError(path + ": shares for (" + sr.first + "," +
                             sr.second + ") sum to " + fmt_double(sum) +
                             ", expected 1");
        }
    }
    return mix;
}

OccupationMix remap_mix(const OccupationMix& mix,
                        const std::map<std::string, std::string>& code_map) {
    auto resolve = [&](const std::string& occ) -> const std::string& {
        auto it = code_map.find(occ);
        if (it != code_map.end()) return it->second;
        for (std::size_t len = occ.size(); len > 0; --len) {
            it = code_map.find(occ.substr(0, len - 1));
            if (it != code_map.end()) return it->second;
        }
        throw InputError("occupation \"" + occ +
                         "\" has no mapping in the merge map");
    };
    OccupationMix out;
    for (const auto& [sr, dist] : mix.shares) {
        for (const auto& [occ, share] : dist) {
            out.shares[sr][resolve(occ)] += share;
        }
    }
    return out;
}

NodeDemand map_sector_to_occupation(const SectorDemand& sectors,
                                    const OccupationMix& mix) {
    // Node universe: occupations from the mix crossed with regions from
    // the demand file.
    std::set<std::string> regions;
    std::set<std::pair<std::string, std::string>> sector_regions;
    for (const auto& [key, v] : sectors.values) {
        (void)v;
        regions.insert(std::get<2>(key));
        sector_regions.insert({std::get<1>(key), std::get<2>(key)});
    }
    for (const auto& sr : sector_regions) {
        if (!mix.shares.count(sr)) {
            throw InputError("occupation mix has no entry for sector \"" +
                             sr.first + "\" in region \"" + sr.second + "\"");
        }
    }
    std::set<std::string> occupations;
    for (const auto& [sr, dist] : mix.shares) {
        if (!sector_regions.count(sr)) continue;
        for (const auto& [occ, share] : dist) {
            (void)share;
            occupations.insert(occ);
        }
    }
    std::vector<OccRegion> nodes;
    for (const auto& occ : occupations) {
        for (const auto& reg : regions) nodes.push_back({occ, reg});
    }

    NodeDemand out;
    out.scenarios = sectors.scenarios;
    out.index = NodeIndex(std::move(nodes));
    out.first_year = sectors.first_year();
    out.n_years = sectors.n_years();
    const std::size_t n = out.index.size();
    out.demand.assign(out.scenarios.size(),
                      std::vector<double>(static_cast<std::size_t>(out.n_years) * n,
                                          0.0));
    for (const auto& [key, value] : sectors.values) {
        const auto& [scen, sector, region, year] = key;
        std::size_t s = static_cast<std::size_t>(
            std::lower_bound(out.scenarios.begin(), out.scenarios.end(), scen) -
            out.scenarios.begin());
        std::size_t y = static_cast<std::size_t>(year - out.first_year);
        for (const auto& [occ, share] : mix.shares.at({sector, region})) {
            std::size_t i = out.index.id_of({occ, region});
            out.demand[s][y * n + i] += value * share;
        }
    }
    return out;
}

void normalize_demand(NodeDemand& d) {
    std::size_t base = static_cast<std::size_t>(
        std::lower_bound(d.scenarios.begin(), d.scenarios.end(),
                         kBaselineScenario) -
        d.scenarios.begin());
    if (base >= d.scenarios.size() || d.scenarios[base] != kBaselineScenario) {
        throw InputError("no baseline scenario to normalize against");
    }
    const std::size_t n = d.index.size();
    std::vector<double> totals(static_cast<std::size_t>(d.n_years), 0.0);
    for (int y = 0; y < d.n_years; ++y) {
        for (std::size_t i = 0; i < n; ++i) {
            totals[static_cast<std::size_t>(y)] +=
                d.demand[base][static_cast<std::size_t>(y) * n + i];
        }
        if (totals[static_cast<std::size_t>(y)] <= 0.0) {
            throw InputError("baseline demand total is zero in year " +
                             std::to_string(d.first_year + y));
        }
    }
    for (auto& series : d.demand) {
        for (int y = 0; y < d.n_years; ++y) {
            double factor = totals[0] / totals[static_cast<std::size_t>(y)];
            for (std::size_t i = 0; i < n; ++i) {
                series[static_cast<std::size_t>(y) * n + i] *= factor;
            }
        }
    }
}

TargetDemand interpolate_demand(const NodeDemand& d, int steps_per_year) {
    if (steps_per_year < 1) throw InputError("steps_per_year must be >= 1");
    if (d.n_years < 2) throw InputError("need at least two years to interpolate");
    TargetDemand out;
    out.scenarios = d.scenarios;
    out.index = d.index;
    out.first_year = d.first_year;
    out.n_years = d.n_years;
    out.steps_per_year = steps_per_year;
    const std::size_t n = d.index.size();
    const int total = out.total_steps();
    for (std::size_t s = 0; s < d.scenarios.size(); ++s) {
        std::vector<double> series(static_cast<std::size_t>(total) * n, 0.0);
        for (int y = 0; y < d.n_years; ++y) {
            int t = y * steps_per_year;
            for (std::size_t i = 0; i < n; ++i) {
                series[static_cast<std::size_t>(t) * n + i] = d.at(s, y, i);
            }
        }
        for (int y = 0; y + 1 < d.n_years; ++y) {
            int t0 = y * steps_per_year;
            for (int k = 1; k < steps_per_year; ++k) {
                double frac = static_cast<double>(k) / steps_per_year;
                for (std::size_t i = 0; i < n; ++i) {
                    double lo = d.at(s, y, i);
                    double hi = d.at(s, y + 1, i);
                    series[static_cast<std::size_t>(t0 + k) * n + i] =
                        lo + (hi - lo) * frac;
                }
            }
        }
        out.target.push_back(std::move(series));
    }
    return out;
}

std::size_t TargetDemand::scenario_pos(const std::string& id) const {
    auto it = std::lower_bound(scenarios.begin(), scenarios.end(), id);
    if (it == scenarios.end() || *it != id) {
        throw InputError("scenario \"" + id + "\" not present");
    }
    return static_cast<std::size_t>(it - scenarios.begin());
}

std::vector<GroupReallocation> reallocation_volume(const NodeDemand& d,
                                                   std::size_t scenario_pos) {
    const std::size_t n = d.index.size();
    std::map<std::string, GroupReallocation> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::string group = d.index.node(i).occupation.substr(0, 1);
        auto& slot = groups[group];
        slot.group = group;
        double first = d.at(scenario_pos, 0, i);
        double last = d.at(scenario_pos, d.n_years - 1, i);
        if (last > first) {
            slot.created += last - first;
        } else {
            slot.destroyed += first - last;
        }
    }
    std::vector<GroupReallocation> out;
    for (auto& [g, slot] : groups) {
        (void)g;
        out.push_back(slot);
    }
    return out;
}

std::string target_demand_to_csv(const TargetDemand& t) {
    std::string out = "scenario,occupation,region,timestep,target\n";
    const std::size_t n = t.index.size();
    for (std::size_t s = 0; s < t.scenarios.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const OccRegion& node = t.index.node(i);
            for (int step = 0; step < t.total_steps(); ++step) {
                out += t.scenarios[s];
                out += ',';
                out += node.occupation;
                out += ',';
                out += node.region;
                out += ',';
                out += std::to_string(step);
                out += ',';
                out += fmt_double(t.at(s, step, i));
                out += '\n';
            }
        }
    }
    return out;
}

TargetDemand target_demand_from_csv(const std::string& path,
                                    int steps_per_year, int first_year) {
    CsvReader reader(path, "scenario,occupation,region,timestep,target");
    std::vector<std::string> f;
    std::set<std::string> scen_set;
    std::set<OccRegion> node_set;
    int max_step = 0;
    struct Row {
        std::string scenario;
        OccRegion node;
        int step;
        double value;
    };
    std::vector<Row> rows;
    while (reader.next(f)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        int step = parse_int(f[3], ctx);
        if (step < 0) reader.fail("negative timestep");
        double value = parse_real(f[4], ctx);
        if (value < 0.0) reader.fail("negative target demand");
        scen_set.insert(f[0]);
        OccRegion node{f[1], f[2]};
        node_set.insert(node);
        max_step = std::max(max_step, step);
        rows.push_back({f[0], std::move(node), step, value});
    }
    if (rows.empty()) throw InputError(path + ": no target rows");
    if (max_step % steps_per_year != 0) {
        throw InputError(path + ": " + std::to_string(max_step + 1) +
                         " steps is not a whole number of years at " +
                         std::to_string(steps_per_year) + " steps per year");
    }
    TargetDemand out;
    out.scenarios.assign(scen_set.begin(), scen_set.end());
    out.index = NodeIndex({node_set.begin(), node_set.end()});
    out.first_year = first_year;
    out.n_years = max_step / steps_per_year + 1;
    out.steps_per_year = steps_per_year;
    const std::size_t n = out.index.size();
    const std::size_t cells = static_cast<std::size_t>(out.total_steps()) * n;
    out.target.assign(out.scenarios.size(), std::vector<double>(cells, -1.0));
    for (const auto& row : rows) {
        std::size_t s = out.scenario_pos(row.scenario);
        std::size_t i = out.index.id_of(row.node);
        double& cell =
            out.target[s][static_cast<std::size_t>(row.step) * n + i];
        if (cell >= 0.0) {
            throw InputError(path + ": duplicate target for " +
                             row.node.token() + " at step " +
                             std::to_string(row.step));
        }
        cell = row.value;
    }
    for (std::size_t s = 0; s < out.scenarios.size(); ++s) {
        for (std::size_t c = 0; c < cells; ++c) {
            if (out.target[s][c] < 0.0) {
                throw InputError(path + ": incomplete target grid for scenario " +
                                 out.scenarios[s]);
            }
        }
    }
    return out;
}

} // namespace labourflow
