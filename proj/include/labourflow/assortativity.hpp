#pragma once

#include "labourflow/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace labourflow {

// Weighted categorical assortativity over directed edge weights:
//   r = (Σ_i e_ii − Σ_i a_i b_i) / (1 − Σ_i a_i b_i)
// where e_ij is the fraction of total edge weight from category i to
// category j and a, b are its row and column sums. Returns empty when
// the denominator degenerates (effectively one category), which the
// callers report as "undefined" rather than a number.
std::optional<double> assortativity(const MobilityNetwork& net,
                                    const std::vector<std::size_t>& category_of,
                                    std::size_t n_categories);

// Node attribute maps used by the stats report. `names` receives the
// category labels in index order when non-null.
std::vector<std::size_t> categories_by_region(
    const NodeIndex& index, std::vector<std::string>* names = nullptr);
std::vector<std::size_t> categories_by_broad_group(
    const NodeIndex& index, std::vector<std::string>* names = nullptr);

// 1-digit prefix of an occupation code.
std::string broad_group_of(const std::string& occupation);

} // namespace labourflow
