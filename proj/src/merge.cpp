#include "labourflow/merge.hpp"

#include "labourflow/errors.hpp"

#include <algorithm>
#include <set>

namespace labourflow {

namespace {

// Folds every current code strictly below `prefix` into `prefix`.
void collapse_prefix(std::map<std::string, std::string>& current,
                     const std::string& prefix) {
    for (auto& [orig, cur] : current) {
        (void)orig;
        if (cur.size() > prefix.size() && cur.compare(0, prefix.size(), prefix) == 0) {
            cur = prefix;
        }
    }
}

std::set<std::string> active_codes(
    const std::map<std::string, std::string>& current) {
    std::set<std::string> s;
    for (const auto& [orig, cur] : current) {
        (void)orig;
        s.insert(cur);
    }
    return s;
}

// Surviving codes must be prefix-free, otherwise a code would denote
// both itself and part of a sibling hybrid. Shorter codes absorb any
// active descendants.
void enforce_prefix_free(std::map<std::string, std::string>& current) {
    bool changed = true;
    while (changed) {
        changed = false;
        auto actives = active_codes(current);
        for (const auto& code : actives) {
            for (const auto& other : actives) {
                if (other.size() > code.size() &&
                    other.compare(0, code.size(), code) == 0) {
                    collapse_prefix(current, code);
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
}

struct OccStats {
    long long min_region_volume = 0;
    long long total_volume = 0;
    bool outside_core = false;
};

std::map<std::string, OccStats> occupation_stats(const TransitionTable& table) {
    auto out_vol = table.out_volume();
    auto in_vol = table.in_volume();
    std::map<std::string, OccStats> stats;
    for (std::size_t i = 0; i < table.index.size(); ++i) {
        long long vol = out_vol[i] + in_vol[i];
        const std::string& occ = table.index.node(i).occupation;
        auto [it, inserted] = stats.try_emplace(occ);
        if (inserted) {
            it->second.min_region_volume = vol;
        } else {
            it->second.min_region_volume =
                std::min(it->second.min_region_volume, vol);
        }
        it->second.total_volume += vol;
    }
    return stats;
}

// Marks occupations owning nodes outside the largest connected
// component of the undirected positive-flow support.
void mark_noncore(const TransitionTable& table,
                  std::map<std::string, OccStats>& stats) {
    const std::size_t n = table.index.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [key, c] : table.counts) {
        if (c <= 0 || key.first == key.second) continue;
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<std::size_t> comp(n, n);
    std::size_t n_comp = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] != n) continue;
        std::vector<std::size_t> stack{start};
        comp[start] = n_comp;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            for (std::size_t nb : adj[cur]) {
                if (comp[nb] == n) {
                    comp[nb] = n_comp;
                    stack.push_back(nb);
                }
            }
        }
        ++n_comp;
    }
    std::vector<std::size_t> sizes(n_comp, 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[comp[i]];
    // Core = largest component; first such component wins ties, which
    // is deterministic because node ids are sorted.
    std::size_t core = 0;
    for (std::size_t c = 1; c < n_comp; ++c) {
        if (sizes[c] > sizes[core]) core = c;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != core) {
            stats[table.index.node(i).occupation].outside_core = true;
        }
    }
}

} // namespace

MergeOutcome merge_occupations(const TransitionTable& input,
                               const OccupationHierarchy& hierarchy,
                               long long min_presence,
                               const RegionManifest& regions) {
    if (min_presence < 1) throw InputError("min_presence must be >= 1");

    std::map<std::string, std::string> current;
    for (const auto& occ : input.index.occupations()) {
        if (!hierarchy.contains(occ)) {
            throw InputError("occupation \"" + occ + "\" not in hierarchy");
        }
        current[occ] = occ;
    }
    enforce_prefix_free(current);

    MergeOutcome out;
    out.table = relabel_occupations(input, current, regions);

    while (true) {
        auto stats = occupation_stats(out.table);
        std::vector<std::string> offenders;
        for (const auto& [occ, st] : stats) {
            if (st.min_region_volume < min_presence) offenders.push_back(occ);
        }
        if (offenders.empty()) {
            if (out.table.undirected_connected()) break;
            mark_noncore(out.table, stats);
            for (const auto& [occ, st] : stats) {
                if (st.outside_core) offenders.push_back(occ);
            }
            if (offenders.empty()) break;
        }

        const std::string* pick = &offenders.front();
        for (const auto& occ : offenders) {
            if (occ.size() != pick->size()) {
                if (occ.size() > pick->size()) pick = &occ;
                continue;
            }
            long long a = stats[occ].total_volume;
            long long b = stats[*pick].total_volume;
            if (a != b) {
                if (a < b) pick = &occ;
                continue;
            }
            if (occ < *pick) pick = &occ;
        }

        auto parent = hierarchy.parent(*pick);
        if (!parent) {
            std::sort(offenders.begin(), offenders.end());
            std::string list;
            for (const auto& occ : offenders) {
                if (!list.empty()) list += ", ";
                list += occ;
            }
            throw ConstraintError(
                "code hierarchy exhausted; unsatisfiable occupations: " + list);
        }
        collapse_prefix(current, *parent);
        out.table = relabel_occupations(input, current, regions);
        ++out.rounds;
    }

    out.merge_map = current;
    for (const auto& occ : active_codes(current)) out.merge_map[occ] = occ;
    return out;
}

} // namespace labourflow
