#include "commands.hpp"

#include "labourflow/assortativity.hpp"
#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/merge.hpp"
#include "labourflow/network.hpp"
#include "labourflow/occupations.hpp"
#include "labourflow/transitions.hpp"

#include <filesystem>
#include <map>

namespace labourflow::cli {

namespace {

std::map<OccRegion, double> load_wages(const std::string& path,
                                       const NodeIndex& index) {
    std::map<OccRegion, double> wages;
    if (path.empty()) return wages;
    CsvReader reader(path, "occupation,region,mean_wage");
    std::vector<std::string> f;
    while (reader.next(f)) {
        OccRegion node{f[0], f[1]};
        // Entries for codes that were merged away are simply dropped;
        // wages are metadata keyed by the final node set.
        if (!index.contains(node)) continue;
        wages[node] = parse_real(f[2], path + ":" +
                                           std::to_string(reader.row_number()));
    }
    return wages;
}

std::string merge_map_csv(const std::map<std::string, std::string>& merge_map) {
    std::string out = "original_code,merged_code\n";
    for (const auto& [from, to] : merge_map) {
        out += from + "," + to + "\n";
    }
    return out;
}

} // namespace

void cmd_build_network(const BuildNetworkOpts& opts) {
    OccupationHierarchy hierarchy = OccupationHierarchy::load(opts.hierarchy);
    RegionManifest regions = RegionManifest::load(opts.regions);
    TransitionTable raw =
        ingest_transitions(opts.transitions, hierarchy, regions);
    std::size_t codes_before = raw.index.occupations().size();

    MergeOutcome merged =
        merge_occupations(raw, hierarchy, opts.min_presence, regions);

    Normalization norm = normalization_from_name(opts.normalization);
    MobilityNetwork net = opts.no_friction
                              ? complete_network(merged.table.index)
                              : build_network(merged.table, norm);
    if (opts.no_friction) norm = net.normalization;

    NetworkReport report;
    report.n_nodes = net.size();
    report.n_edges = net.edge_count();
    report.n_occupations = net.index.occupations().size();
    report.n_regions = net.index.regions().size();
    report.total_volume = merged.table.total();
    report.merge_rounds = merged.rounds;
    report.codes_before_merge = codes_before;
    report.codes_after_merge = report.n_occupations;
    report.assortativity_region = [&] {
        std::vector<std::size_t> cats = categories_by_region(net.index);
        return assortativity(net, cats, net.index.regions().size());
    }();
    report.assortativity_broad_group = [&] {
        std::vector<std::string> names;
        std::vector<std::size_t> cats = categories_by_broad_group(net.index,
                                                                  &names);
        return assortativity(net, cats, names.size());
    }();
    for (std::size_t id : net.zero_marginal) {
        report.zero_marginal_nodes.push_back(net.index.node(id).token());
    }
    report.connected = net.undirected_connected;
    report.normalization = norm;

    std::filesystem::create_directories(opts.out_dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(opts.out_dir) / name).string();
    };
    write_text_file(path("network.csv"), network_to_edge_csv(net));
    write_text_file(path("nodes.json"),
                    nodes_sidecar_json(net.index, norm,
                                       load_wages(opts.wages, net.index)));
    write_text_file(path("merge_map.csv"), merge_map_csv(merged.merge_map));
    write_text_file(path("network_report.json"), network_report_json(report));
}

} // namespace labourflow::cli
