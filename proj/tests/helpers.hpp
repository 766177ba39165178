#pragma once

#include "labourflow/network.hpp"
#include "labourflow/scenario.hpp"
#include "labourflow/transitions.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace testutil {

using namespace labourflow;

// Fresh directory under the system temp root, removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        static std::atomic<unsigned> counter{0};
        path_ = base / ("labourflow_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
}

inline std::string read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) {
        out.append(buf, got);
    }
    std::fclose(f);
    return out;
}

struct Triplet {
    OccRegion src;
    OccRegion dst;
    long long count;
};

inline TransitionTable table_from(const std::vector<Triplet>& rows) {
    std::vector<RawTransition> recs;
    std::vector<std::string> regions;
    for (const auto& r : rows) {
        recs.push_back({r.src.occupation, r.src.region, r.dst.occupation,
                        r.dst.region, r.count});
        regions.push_back(r.src.region);
        regions.push_back(r.dst.region);
    }
    return build_transition_table(recs, RegionManifest::from_ids(regions));
}

inline MobilityNetwork net_from(const std::vector<Triplet>& rows,
                                Normalization norm = Normalization::Source) {
    return build_network(table_from(rows), norm);
}

// Constant-per-node-and-year demand path, one scenario per entry of
// `per_year`: per_year[scenario][year_idx][node_id].
inline TargetDemand targets_from(
    const NodeIndex& index, const std::vector<std::string>& scenarios,
    int first_year, int steps_per_year,
    const std::function<double(std::size_t, int, std::size_t)>& demand_at,
    int n_years) {
    NodeDemand d;
    d.scenarios = scenarios;
    d.index = index;
    d.first_year = first_year;
    d.n_years = n_years;
    const std::size_t n = index.size();
    d.demand.assign(scenarios.size(),
                    std::vector<double>(static_cast<std::size_t>(n_years) * n));
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (int y = 0; y < n_years; ++y) {
            for (std::size_t i = 0; i < n; ++i) {
                d.demand[s][static_cast<std::size_t>(y) * n + i] =
                    demand_at(s, y, i);
            }
        }
    }
    return interpolate_demand(d, steps_per_year);
}

inline int run_cli(const std::string& args, const std::string& log_file = "") {
    std::string cmd = std::string(LABOURFLOW_BIN) + " " + args;
    if (!log_file.empty()) cmd += " >" + log_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace testutil
