#include "labourflow/synthetic.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace labourflow {

void SyntheticSpec::validate() const {
    if (n_occupations < 2) throw InputError("need at least 2 occupations");
    if (n_regions < 1) throw InputError("need at least 1 region");
    if (hierarchy_depth < 2 || hierarchy_depth > 4) {
        throw InputError("hierarchy depth must be 2..4");
    }
    if (within_region < 0.0 || within_occupation < 0.0 || baseline_edge < 0.0) {
        throw InputError("attachment weights must be >= 0");
    }
    if (within_region + within_occupation + baseline_edge <= 0.0) {
        throw InputError("all attachment weights are zero");
    }
    if (mean_edge_volume <= 0.0) throw InputError("edge volume must be > 0");
    if (base_demand <= 0.0) throw InputError("base demand must be > 0");
    if (n_years < 2) throw InputError("need at least 2 years");
    if (shock_rate < 0.0) throw InputError("shock rate must be >= 0");
    if (std::abs(shock_rate) + std::abs(baseline_growth) >= 1.0) {
        throw InputError("growth rates too large; demand would go negative");
    }
    for (const auto& s : shock_scenarios) {
        validate_identifier(s, "scenario id");
        if (s == "baseline") {
            throw InputError("shock scenario cannot be named \"baseline\"");
        }
    }
}

int synthetic_group_count(const SyntheticSpec& spec) {
    int g = static_cast<int>(
        std::lround(std::sqrt(static_cast<double>(spec.n_occupations))));
    g = std::max(2, std::min(9, g));
    return std::min(g, spec.n_occupations);
}

std::vector<std::string> synthetic_occupation_codes(const SyntheticSpec& spec) {
    int groups = synthetic_group_count(spec);
    int suffix_digits = spec.hierarchy_depth - 1;
    long long capacity = 1;
    for (int d = 0; d < suffix_digits; ++d) capacity *= 10;
    std::vector<std::string> codes;
    for (int k = 0; k < spec.n_occupations; ++k) {
        int group = k % groups + 1;
        long long idx = k / groups;
        if (idx >= capacity) {
            throw InputError("too many occupations for the hierarchy depth");
        }
        std::string suffix = std::to_string(idx);
        suffix.insert(0, static_cast<std::size_t>(suffix_digits) -
                             suffix.size(), '0');
        codes.push_back(std::to_string(group) + suffix);
    }
    std::sort(codes.begin(), codes.end());
    return codes;
}

std::vector<std::string> synthetic_region_ids(const SyntheticSpec& spec) {
    std::vector<std::string> out;
    for (int r = 1; r <= spec.n_regions; ++r) {
        out.push_back("R" + std::to_string(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

SyntheticData gen_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    std::mt19937_64 gen(spec.seed);
    SyntheticData out;

    std::vector<std::string> codes = synthetic_occupation_codes(spec);
    std::vector<std::string> regions = synthetic_region_ids(spec);
    const int groups = synthetic_group_count(spec);

    // Hierarchy: every prefix of every leaf.
    {
        std::set<std::string> prefixes;
        for (const auto& code : codes) {
            for (std::size_t len = 1; len <= code.size(); ++len) {
                prefixes.insert(code.substr(0, len));
            }
        }
        out.hierarchy_csv = "code,parent_code,label\n";
        for (const auto& p : prefixes) {
            std::string parent =
                p.size() == 1 ? "" : p.substr(0, p.size() - 1);
            out.hierarchy_csv += p + "," + parent + ",occupation " + p + "\n";
        }
    }

    out.regions_csv = "region_id,label\n";
    for (const auto& r : regions) {
        out.regions_csv += r + ",region " + r + "\n";
    }

    // Transitions over the occupation x region node grid.
    {
        std::vector<OccRegion> nodes;
        for (const auto& occ : codes) {
            for (const auto& reg : regions) nodes.push_back({occ, reg});
        }
        const std::size_t n = nodes.size();
        std::vector<std::vector<long long>> counts(
            n, std::vector<long long>(n, 0));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                double score = spec.baseline_edge;
                if (nodes[a].region == nodes[b].region) {
                    score += spec.within_region;
                }
                if (nodes[a].occupation == nodes[b].occupation) {
                    score += spec.within_occupation;
                }
                double mean = spec.mean_edge_volume * score;
                if (mean <= 0.0) continue;
                std::poisson_distribution<long long> dist(mean);
                counts[a][b] = dist(gen);
            }
        }
        std::vector<std::size_t> ring(n);
        for (std::size_t i = 0; i < n; ++i) ring[i] = i;
        std::shuffle(ring.begin(), ring.end(), gen);
        for (std::size_t i = 0; i < n; ++i) {
            counts[ring[i]][ring[(i + 1) % n]] += 1;
        }
        out.transitions_csv = "source_occ,source_region,dest_occ,dest_region,count\n";
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (counts[a][b] == 0) continue;
                out.transitions_csv += nodes[a].occupation + "," +
                                       nodes[a].region + "," +
                                       nodes[b].occupation + "," +
                                       nodes[b].region + "," +
                                       std::to_string(counts[a][b]) + "\n";
            }
        }
    }

    // Sector demand: one sector per 1-digit group. Shock offsets are
    // spread evenly over [-shock_rate, +shock_rate] by sector index.
    {
        out.sector_demand_csv = "scenario,sector,region,year,demand\n";
        std::vector<std::string> scenarios = {"baseline"};
        scenarios.insert(scenarios.end(), spec.shock_scenarios.begin(),
                         spec.shock_scenarios.end());
        std::sort(scenarios.begin(), scenarios.end());
        std::vector<int> group_size(static_cast<std::size_t>(groups), 0);
        for (const auto& code : codes) {
            ++group_size[static_cast<std::size_t>(code[0] - '1')];
        }
        for (const auto& scen : scenarios) {
            for (int g = 1; g <= groups; ++g) {
                double offset = 0.0;
                if (scen != "baseline" && groups > 1) {
                    offset = spec.shock_rate *
                             (2.0 * (g - 1) / (groups - 1) - 1.0);
                }
                double rate = 1.0 + spec.baseline_growth + offset;
                for (std::size_t r = 0; r < regions.size(); ++r) {
                    double base = spec.base_demand *
                                  group_size[static_cast<std::size_t>(g - 1)] *
                                  (1.0 + 0.1 * ((g + static_cast<int>(r)) % 3));
                    for (int y = 0; y < spec.n_years; ++y) {
                        double demand = base * std::pow(rate, y);
                        out.sector_demand_csv +=
                            scen + ",sec" + std::to_string(g) + "," +
                            regions[r] + "," +
                            std::to_string(spec.first_year + y) + "," +
                            fmt_double(demand) + "\n";
                    }
                }
            }
        }
    }

    // Mix: each sector employs its own group's occupations with mildly
    // varied shares, identical across regions.
    {
        out.mix_csv = "sector,region,occupation,share\n";
        for (int g = 1; g <= groups; ++g) {
            std::vector<std::string> member;
            for (const auto& code : codes) {
                if (code[0] - '0' == g) member.push_back(code);
            }
            std::vector<double> weight(member.size());
            double total = 0.0;
            for (std::size_t k = 0; k < member.size(); ++k) {
                weight[k] = 1.0 + 0.1 * static_cast<double>((k * 7) % 5);
                total += weight[k];
            }
            for (const auto& reg : regions) {
                for (std::size_t k = 0; k < member.size(); ++k) {
                    out.mix_csv += "sec" + std::to_string(g) + "," + reg + "," +
                                   member[k] + "," +
                                   fmt_double(weight[k] / total) + "\n";
                }
            }
        }
    }

    return out;
}

} // namespace labourflow
