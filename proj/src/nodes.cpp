#include "labourflow/nodes.hpp"

#include "labourflow/errors.hpp"

#include <algorithm>
#include <set>

namespace labourflow {

NodeIndex::NodeIndex(std::vector<OccRegion> nodes) : nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) ids_[nodes_[i]] = i;
}

std::size_t NodeIndex::id_of(const OccRegion& n) const {
    auto it = ids_.find(n);
    if (it == ids_.end()) throw InputError("unknown node " + n.token());
    return it->second;
}

bool NodeIndex::contains(const OccRegion& n) const {
    return ids_.count(n) != 0;
}

std::vector<std::string> NodeIndex::occupations() const {
    std::set<std::string> s;
    for (const auto& n : nodes_) s.insert(n.occupation);
    return {s.begin(), s.end()};
}

std::vector<std::string> NodeIndex::regions() const {
    std::set<std::string> s;
    for (const auto& n : nodes_) s.insert(n.region);
    return {s.begin(), s.end()};
}

void validate_identifier(const std::string& s, const std::string& what) {
    if (s.empty()) throw InputError(what + " must not be empty");
    for (char c : s) {
        if (c == ',' || c == ':' || c == '\n' || c == '\r') {
            throw InputError(what + " \"" + s +
                             "\" contains a reserved character");
        }
    }
}

} // namespace labourflow
