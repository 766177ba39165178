#pragma once

#include "labourflow/nodes.hpp"
#include "labourflow/occupations.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace labourflow {

// Aggregated worker-move counts between occupation-region nodes. The
// node universe is every occupation observed in the records crossed
// with every region in the manifest, so zero-flow combinations are
// first-class nodes.
struct TransitionTable {
    NodeIndex index;
    std::map<std::pair<std::size_t, std::size_t>, long long> counts;

    long long total() const;
    std::vector<long long> out_volume() const;
    std::vector<long long> in_volume() const;

    // Undirected connectivity of the positive-count support over the
    // full node universe (isolated nodes make this false).
    bool undirected_connected() const;
};

// Reads "source_occ,source_region,dest_occ,dest_region,count" rows.
// Duplicate rows are summed; zero-count rows register their endpoint
// occupations without creating an edge. Rejects negative counts,
// codes missing from the hierarchy, and regions missing from the
// manifest, naming the row. Empty input (no data rows) is an error.
TransitionTable ingest_transitions(const std::string& path,
                                   const OccupationHierarchy& hierarchy,
                                   const RegionManifest& regions);

// In-memory variant used by tests and generators.
struct RawTransition {
    std::string source_occ;
    std::string source_region;
    std::string dest_occ;
    std::string dest_region;
    long long count = 0;
};

TransitionTable build_transition_table(const std::vector<RawTransition>& rows,
                                       const RegionManifest& regions);

// Re-aggregates a table under an occupation relabelling. Codes absent
// from the map pass through unchanged.
TransitionTable relabel_occupations(
    const TransitionTable& table,
    const std::map<std::string, std::string>& occ_map,
    const RegionManifest& regions);

} // namespace labourflow
