#include "labourflow/assortativity.hpp"

#include "labourflow/errors.hpp"

#include <cmath>
#include <map>

namespace labourflow {

std::optional<double> assortativity(const MobilityNetwork& net,
                                    const std::vector<std::size_t>& category_of,
                                    std::size_t n_categories) {
    if (category_of.size() != net.size()) {
        throw InputError("category map does not cover all nodes");
    }
    for (std::size_t c : category_of) {
        if (c >= n_categories) throw InputError("category index out of range");
    }
    std::vector<double> e(n_categories * n_categories, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        for (std::size_t k = net.row_offsets[i]; k < net.row_offsets[i + 1];
             ++k) {
            double w = net.weights[k];
            e[category_of[i] * n_categories + category_of[net.cols[k]]] += w;
            total += w;
        }
    }
    if (total <= 0.0) throw InputError("network has no positive edge weight");
    for (double& x : e) x /= total;

    std::vector<double> a(n_categories, 0.0), b(n_categories, 0.0);
    double trace = 0.0;
    for (std::size_t i = 0; i < n_categories; ++i) {
        for (std::size_t j = 0; j < n_categories; ++j) {
            a[i] += e[i * n_categories + j];
            b[j] += e[i * n_categories + j];
        }
        trace += e[i * n_categories + i];
    }
    double sum_ab = 0.0;
    for (std::size_t i = 0; i < n_categories; ++i) sum_ab += a[i] * b[i];
    double denom = 1.0 - sum_ab;
    if (std::abs(denom) < 1e-15) return std::nullopt;
    return (trace - sum_ab) / denom;
}

namespace {

std::vector<std::size_t> categorize(const NodeIndex& index,
                                    std::vector<std::string>* names,
                                    const std::string& (*key)(const OccRegion&),
                                    std::string (*derive)(const std::string&)) {
    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> out(index.size());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < index.size(); ++i) {
        std::string cat = derive(key(index.node(i)));
        auto [it, inserted] = ids.try_emplace(cat, labels.size());
        if (inserted) labels.push_back(cat);
        out[i] = it->second;
    }
    if (names) *names = labels;
    return out;
}

const std::string& region_key(const OccRegion& n) { return n.region; }
const std::string& occ_key(const OccRegion& n) { return n.occupation; }
std::string identity_derive(const std::string& s) { return s; }

} // namespace

std::string broad_group_of(const std::string& occupation) {
    if (occupation.empty()) throw InputError("empty occupation code");
    return occupation.substr(0, 1);
}

std::vector<std::size_t> categories_by_region(const NodeIndex& index,
                                              std::vector<std::string>* names) {
    return categorize(index, names, region_key, identity_derive);
}

std::vector<std::size_t> categories_by_broad_group(
    const NodeIndex& index, std::vector<std::string>* names) {
    return categorize(index, names, occ_key, broad_group_of);
}

} // namespace labourflow
