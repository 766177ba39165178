#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace labourflow {

// Parameters for the deterministic desk-scale input generator. Edge
// counts are Poisson draws whose means follow a block structure: every
// ordered pair gets `baseline_edge`, same-region pairs add
// `within_region`, same-occupation pairs add `within_occupation`, and a
// seed-shuffled ring of single transitions guarantees connectivity.
// Occupations form a uniform digit tree, one 1-digit group per sector;
// sector demand grows at `baseline_growth` per year, and each shock
// scenario adds per-sector growth offsets spread evenly over
// [-shock_rate, +shock_rate].
struct SyntheticSpec {
    int n_occupations = 25;
    int n_regions = 8;
    int hierarchy_depth = 4;
    double within_region = 1.0;
    double within_occupation = 0.5;
    double baseline_edge = 0.02;
    double mean_edge_volume = 40.0;
    double base_demand = 400.0;
    double baseline_growth = 0.01;
    double shock_rate = 0.02;
    std::vector<std::string> shock_scenarios = {"shock"};
    int first_year = 2018;
    int n_years = 13;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SyntheticData {
    std::string transitions_csv;
    std::string hierarchy_csv;
    std::string regions_csv;
    std::string sector_demand_csv;
    std::string mix_csv;
};

SyntheticData gen_synthetic(const SyntheticSpec& spec);

// Leaf occupation codes implied by the spec, sorted.
std::vector<std::string> synthetic_occupation_codes(const SyntheticSpec& spec);
std::vector<std::string> synthetic_region_ids(const SyntheticSpec& spec);
int synthetic_group_count(const SyntheticSpec& spec);

} // namespace labourflow
