#pragma once

#include "labourflow/nodes.hpp"
#include "labourflow/transitions.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace labourflow {

enum class Normalization { Source, Destination };

const char* normalization_name(Normalization n);
Normalization normalization_from_name(const std::string& s);

// Row-compressed weighted directed graph over occupation-region nodes.
// Source normalization makes each positive row sum to 1 (transition
// probabilities out of a node); destination normalization makes each
// positive column sum to 1.
struct MobilityNetwork {
    NodeIndex index;
    Normalization normalization = Normalization::Source;
    std::vector<std::size_t> row_offsets; // size N+1
    std::vector<std::uint32_t> cols;      // sorted within each row
    std::vector<double> weights;
    // Nodes whose normalizing marginal was zero (no outgoing flow in
    // source mode, no incoming flow in destination mode).
    std::vector<std::size_t> zero_marginal;
    bool undirected_connected = false;

    std::size_t size() const { return index.size(); }
    std::size_t edge_count() const { return cols.size(); }
    double weight(std::size_t source, std::size_t dest) const;
    std::vector<double> out_weight_sums() const;
    std::vector<double> in_weight_sums() const;
    double total_weight() const;
};

// Divides each count by its marginal per `norm`. Requires at least one
// positive count.
MobilityNetwork build_network(const TransitionTable& counts,
                              Normalization norm);

// Every ordered pair, self-loops included, gets weight 1/N.
MobilityNetwork complete_network(const NodeIndex& nodes);

/// Edge list serialization: "source,dest,weight" with occ:region tokens
// and round-trip-exact weights. Node set and normalization travel in a
// JSON sidecar handled by the caller.
std::string network_to_edge_csv(const MobilityNetwork& net);
MobilityNetwork network_from_edge_csv(const std::string& path,
                                      const NodeIndex& nodes,
                                      Normalization norm);

} // namespace labourflow
