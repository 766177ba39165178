#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace labourflow {

// One network node: an occupation observed in a particular region.
struct OccRegion {
    std::string occupation;
    std::string region;

    bool operator<(const OccRegion& o) const {
        return std::tie(occupation, region) < std::tie(o.occupation, o.region);
    }
    bool operator==(const OccRegion& o) const {
        return occupation == o.occupation && region == o.region;
    }

    std::string token() const { return occupation + ":" + region; }
};

// Dense, sorted id assignment over a fixed node set. Ids are stable for
// a given set of nodes regardless of insertion order.
class NodeIndex {
public:
    NodeIndex() = default;
    explicit NodeIndex(std::vector<OccRegion> nodes);

    std::size_t size() const { return nodes_.size(); }
    const OccRegion& node(std::size_t id) const { return nodes_[id]; }
    const std::vector<OccRegion>& nodes() const { return nodes_; }

    // Returns the id, or throws InputError naming the missing node.
    std::size_t id_of(const OccRegion& n) const;
    bool contains(const OccRegion& n) const;

    // Distinct occupations / regions present, sorted.
    std::vector<std::string> occupations() const;
    std::vector<std::string> regions() const;

private:
    std::vector<OccRegion> nodes_;
    std::map<OccRegion, std::size_t> ids_;
};

// Identifiers appear as CSV fields and inside "occ:region" tokens, so
// they must not contain the separators. Throws InputError.
void validate_identifier(const std::string& s, const std::string& what);

} // namespace labourflow
