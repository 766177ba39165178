#include "labourflow/transitions.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"

#include <set>

namespace labourflow {

long long TransitionTable::total() const {
    long long t = 0;
    for (const auto& [key, c] : counts) {
        (void)key;
        t += c;
    }
    return t;
}

std::vector<long long> TransitionTable::out_volume() const {
    std::vector<long long> v(index.size(), 0);
    for (const auto& [key, c] : counts) v[key.first] += c;
    return v;
}

std::vector<long long> TransitionTable::in_volume() const {
    std::vector<long long> v(index.size(), 0);
    for (const auto& [key, c] : counts) v[key.second] += c;
    return v;
}

bool TransitionTable::undirected_connected() const {
    const std::size_t n = index.size();
    if (n == 0) return false;
    if (n == 1) return true;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [key, c] : counts) {
        if (c <= 0 || key.first == key.second) continue;
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t nb : adj[cur]) {
            if (!seen[nb]) {
                seen[nb] = 1;
                ++visited;
                stack.push_back(nb);
            }
        }
    }
    return visited == n;
}

namespace {

TransitionTable assemble(const std::set<std::string>& occupations,
                         const RegionManifest& regions,
                         const std::map<std::pair<OccRegion, OccRegion>,
                                        long long>& pair_counts) {
    std::vector<OccRegion> nodes;
    for (const auto& occ : occupations) {
        for (const auto& reg : regions.ids()) nodes.push_back({occ, reg});
    }
    TransitionTable t;
    t.index = NodeIndex(std::move(nodes));
    for (const auto& [pair, c] : pair_counts) {
        if (c == 0) continue;
        t.counts[{t.index.id_of(pair.first), t.index.id_of(pair.second)}] += c;
    }
    return t;
}

} // namespace

TransitionTable ingest_transitions(const std::string& path,
                                   const OccupationHierarchy& hierarchy,
                                   const RegionManifest& regions) {
    CsvReader reader(path,
                     "source_occ,source_region,dest_occ,dest_region,count");
    std::set<std::string> occupations;
    std::map<std::pair<OccRegion, OccRegion>, long long> pair_counts;
    std::vector<std::string> f;
    long rows = 0;
    while (reader.next(f)) {
        ++rows;
        for (int side = 0; side < 2; ++side) {
            const std::string& occ = f[side * 2];
            const std::string& reg = f[side * 2 + 1];
            if (!hierarchy.contains(occ)) {
                reader.fail("occupation \"" + occ + "\" not in hierarchy");
            }
            if (!regions.contains(reg)) {
                reader.fail("region \"" + reg + "\" not in manifest");
            }
        }
        long long c = parse_count(f[4], path + ":" +
                                             std::to_string(reader.row_number()));
        if (c < 0) reader.fail("negative count " + std::to_string(c));
        occupations.insert(f[0]);
        occupations.insert(f[2]);
        if (c > 0) {
            pair_counts[{OccRegion{f[0], f[1]}, OccRegion{f[2], f[3]}}] += c;
        }
    }
    if (rows == 0) throw InputError(path + ": no transition rows");
    return assemble(occupations, regions, pair_counts);
}

TransitionTable build_transition_table(const std::vector<RawTransition>& rows,
                                       const RegionManifest& regions) {
    if (rows.empty()) throw InputError("no transition rows");
    std::set<std::string> occupations;
    std::map<std::pair<OccRegion, OccRegion>, long long> pair_counts;
    for (const auto& r : rows) {
        if (r.count < 0) throw InputError("negative transition count");
        if (!regions.contains(r.source_region) ||
            !regions.contains(r.dest_region)) {
            throw InputError("transition references unknown region");
        }
        occupations.insert(r.source_occ);
        occupations.insert(r.dest_occ);
        if (r.count > 0) {
            pair_counts[{OccRegion{r.source_occ, r.source_region},
                         OccRegion{r.dest_occ, r.dest_region}}] += r.count;
        }
    }
    return assemble(occupations, regions, pair_counts);
}

TransitionTable relabel_occupations(
    const TransitionTable& table,
    const std::map<std::string, std::string>& occ_map,
    const RegionManifest& regions) {
    auto mapped = [&](const std::string& occ) -> const std::string& {
        auto it = occ_map.find(occ);
        return it == occ_map.end() ? occ : it->second;
    };
    std::set<std::string> occupations;
    for (const auto& occ : table.index.occupations()) {
        occupations.insert(mapped(occ));
    }
    std::map<std::pair<OccRegion, OccRegion>, long long> pair_counts;
    for (const auto& [key, c] : table.counts) {
        const OccRegion& s = table.index.node(key.first);
        const OccRegion& d = table.index.node(key.second);
        pair_counts[{OccRegion{mapped(s.occupation), s.region},
                     OccRegion{mapped(d.occupation), d.region}}] += c;
    }
    return assemble(occupations, regions, pair_counts);
}

} // namespace labourflow
