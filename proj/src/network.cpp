#include "labourflow/network.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"

#include <algorithm>
#include <map>

namespace labourflow {

const char* normalization_name(Normalization n) {
    return n == Normalization::Source ? "source" : "destination";
}

Normalization normalization_from_name(const std::string& s) {
    if (s == "source") return Normalization::Source;
    if (s == "destination") return Normalization::Destination;
    throw InputError("unknown normalization \"" + s + "\"");
}

double MobilityNetwork::weight(std::size_t source, std::size_t dest) const {
    auto begin = cols.begin() + static_cast<std::ptrdiff_t>(row_offsets[source]);
    auto end = cols.begin() + static_cast<std::ptrdiff_t>(row_offsets[source + 1]);
    auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(dest));
    if (it == end || *it != dest) return 0.0;
    return weights[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> MobilityNetwork::out_weight_sums() const {
    std::vector<double> s(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            s[i] += weights[k];
        }
    }
    return s;
}

std::vector<double> MobilityNetwork::in_weight_sums() const {
    std::vector<double> s(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            s[cols[k]] += weights[k];
        }
    }
    return s;
}

double MobilityNetwork::total_weight() const {
    double t = 0.0;
    for (double w : weights) t += w;
    return t;
}

namespace {

MobilityNetwork from_entries(
    NodeIndex index, Normalization norm,
    const std::map<std::pair<std::size_t, std::size_t>, double>& entries,
    bool connected) {
    MobilityNetwork net;
    net.index = std::move(index);
    net.normalization = norm;
    net.undirected_connected = connected;
    const std::size_t n = net.size();
    if (n > 0xFFFFFFFFull) throw InputError("node count exceeds supported size");
    net.row_offsets.assign(n + 1, 0);
    net.cols.reserve(entries.size());
    net.weights.reserve(entries.size());
    std::size_t row = 0;
    for (const auto& [key, w] : entries) {
        while (row < key.first) net.row_offsets[++row] = net.cols.size();
        net.cols.push_back(static_cast<std::uint32_t>(key.second));
        net.weights.push_back(w);
    }
    while (row < n) net.row_offsets[++row] = net.cols.size();
    return net;
}

} // namespace

MobilityNetwork build_network(const TransitionTable& counts,
                              Normalization norm) {
    if (counts.counts.empty()) {
        throw InputError("no positive transition counts to normalize");
    }
    const std::size_t n = counts.index.size();
    std::vector<long long> marginal(n, 0);
    for (const auto& [key, c] : counts.counts) {
        marginal[norm == Normalization::Source ? key.first : key.second] += c;
    }
    std::map<std::pair<std::size_t, std::size_t>, double> entries;
    for (const auto& [key, c] : counts.counts) {
        long long m = marginal[norm == Normalization::Source ? key.first
                                                             : key.second];
        entries[key] = static_cast<double>(c) / static_cast<double>(m);
    }
    MobilityNetwork net = from_entries(counts.index, norm, entries,
                                       counts.undirected_connected());
    for (std::size_t i = 0; i < n; ++i) {
        if (marginal[i] == 0) net.zero_marginal.push_back(i);
    }
    return net;
}

MobilityNetwork complete_network(const NodeIndex& nodes) {
    const std::size_t n = nodes.size();
    if (n == 0) throw InputError("complete network needs at least one node");
    if (n > 0xFFFFFFFFull) throw InputError("node count exceeds supported size");
    MobilityNetwork net;
    net.index = nodes;
    net.normalization = Normalization::Source;
    net.undirected_connected = true;
    const double w = 1.0 / static_cast<double>(n);
    net.row_offsets.resize(n + 1);
    net.cols.resize(n * n);
    net.weights.assign(n * n, w);
    for (std::size_t i = 0; i <= n; ++i) net.row_offsets[i] = i * n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            net.cols[i * n + j] = static_cast<std::uint32_t>(j);
        }
    }
    return net;
}

std::string network_to_edge_csv(const MobilityNetwork& net) {
    std::string out = "source,dest,weight\n";
    for (std::size_t i = 0; i < net.size(); ++i) {
        const std::string src = net.index.node(i).token();
        for (std::size_t k = net.row_offsets[i]; k < net.row_offsets[i + 1];
             ++k) {
            out += src;
            out += ',';
            out += net.index.node(net.cols[k]).token();
            out += ',';
            out += fmt_double(net.weights[k]);
            out += '\n';
        }
    }
    return out;
}

namespace {

OccRegion parse_token(const std::string& token, const CsvReader& reader) {
    std::size_t colon = token.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) {
        reader.fail("malformed node token \"" + token + "\"");
    }
    return {token.substr(0, colon), token.substr(colon + 1)};
}

} // namespace

MobilityNetwork network_from_edge_csv(const std::string& path,
                                      const NodeIndex& nodes,
                                      Normalization norm) {
    CsvReader reader(path, "source,dest,weight");
    std::map<std::pair<std::size_t, std::size_t>, double> entries;
    std::vector<std::string> f;
    TransitionTable support;
    support.index = nodes;
    while (reader.next(f)) {
        OccRegion s = parse_token(f[0], reader);
        OccRegion d = parse_token(f[1], reader);
        if (!nodes.contains(s)) reader.fail("unknown node " + s.token());
        if (!nodes.contains(d)) reader.fail("unknown node " + d.token());
        double w = parse_real(f[2], path + ":" +
                                        std::to_string(reader.row_number()));
        if (w < 0.0 || w > 1.0) reader.fail("weight out of [0,1]");
        auto key = std::make_pair(nodes.id_of(s), nodes.id_of(d));
        if (entries.count(key)) reader.fail("duplicate edge");
        if (w > 0.0) {
            entries[key] = w;
            support.counts[key] = 1;
        }
    }
    MobilityNetwork net =
        from_entries(nodes, norm, entries, support.undirected_connected());
    std::vector<double> marg(nodes.size(), 0.0);
    for (const auto& [key, w] : entries) {
        marg[norm == Normalization::Source ? key.first : key.second] += w;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (marg[i] == 0.0) net.zero_marginal.push_back(i);
    }
    return net;
}

} // namespace labourflow
