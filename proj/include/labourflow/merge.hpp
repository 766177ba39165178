#pragma once

#include "labourflow/occupations.hpp"
#include "labourflow/transitions.hpp"

#include <map>
#include <string>

namespace labourflow {

struct MergeOutcome {
    TransitionTable table;
    // Maps every input code and every surviving code to its final code;
    // surviving codes map to themselves, so applying the map twice
    // equals applying it once.
    std::map<std::string, std::string> merge_map;
    int rounds = 0;
};

// Coarsens occupation codes until every occupation has in+out transition
// volume of at least min_presence in every region and the undirected
// positive-flow support is connected. One offending code is merged per
// round; merging code X collapses the whole subtree under X's parent
// into the parent, keeping the surviving codes prefix-free. Offenders
// are chosen deepest level first, then smallest total volume, then
// lexicographically. Throws ConstraintError when offenders remain at
// the top (1-digit) level.
MergeOutcome merge_occupations(const TransitionTable& input,
                               const OccupationHierarchy& hierarchy,
                               long long min_presence,
                               const RegionManifest& regions);

} // namespace labourflow
