#include "commands.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/dynamics.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/manifest.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <thread>

namespace labourflow::cli {

namespace {

std::string seed_file_name(std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "seed_%05llu.csv",
                  static_cast<unsigned long long>(seed));
    return buf;
}

} // namespace

void cmd_simulate(const SimulateOpts& opts) {
    auto t_start = std::chrono::steady_clock::now();
    opts.params.validate();
    if (opts.n_seeds < 1) throw InputError("--seeds must be >= 1");

    NodesSidecar sidecar = load_nodes_sidecar(opts.nodes_json);
    MobilityNetwork net = network_from_edge_csv(opts.network_csv, sidecar.index,
                                                sidecar.normalization);
    if (opts.no_friction) {
        NodeIndex index = net.index;
        net = complete_network(index);
        net.normalization = sidecar.normalization;
    }
    TargetDemand targets = target_demand_from_csv(
        opts.targets_csv, opts.params.steps_per_year, opts.first_year);
    if (!(net.index.nodes() == targets.index.nodes())) {
        throw InputError(
            "network and target demand describe different node sets");
    }

    std::vector<std::string> scenarios = opts.scenarios;
    if (scenarios.empty()) {
        scenarios = targets.scenarios;
    } else {
        std::sort(scenarios.begin(), scenarios.end());
        scenarios.erase(std::unique(scenarios.begin(), scenarios.end()),
                        scenarios.end());
        for (const auto& s : scenarios) targets.scenario_pos(s); // validates
    }

    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < opts.n_seeds; ++k) {
        seeds.push_back(opts.params.seed + static_cast<std::uint64_t>(k));
    }

    std::filesystem::path out_dir(opts.out_dir);
    std::filesystem::create_directories(out_dir / "runs");
    for (const auto& scenario : scenarios) {
        std::filesystem::create_directories(out_dir / "runs" / scenario);
    }

    struct Job {
        std::string scenario;
        std::uint64_t seed;
        RunEntry result;
    };
    std::vector<Job> jobs;
    for (const auto& scenario : scenarios) {
        for (std::uint64_t seed : seeds) jobs.push_back({scenario, seed, {}});
    }

    int threads = opts.threads > 0
                      ? opts.threads
                      : static_cast<int>(std::max(
                            1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, static_cast<int>(jobs.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) break;
            Job& job = jobs[k];
            RunEntry& entry = job.result;
            entry.scenario = job.scenario;
            entry.seed = job.seed;
            entry.file = "runs/" + job.scenario + "/" +
                         seed_file_name(job.seed);
            SimulationParams run_params = opts.params;
            run_params.seed = job.seed;
            try {
                Trajectory traj =
                    simulate_run(net, targets, job.scenario, run_params);
                std::string csv = traj.to_csv();
                write_text_file((out_dir / entry.file).string(), csv);
                entry.digest = digest_bytes(csv);
                entry.status = "ok";
            } catch (const InternalFault& e) {
                entry.status = std::string("fault: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SimManifest manifest;
    manifest.params = opts.params;
    manifest.normalization = sidecar.normalization;
    manifest.first_year = opts.first_year;
    manifest.scenarios = scenarios;
    manifest.seeds = seeds;
    manifest.input_digests["network"] = digest_file(opts.network_csv);
    manifest.input_digests["network-mode"] =
        opts.no_friction ? "complete" : "file";
    manifest.input_digests["nodes"] = digest_file(opts.nodes_json);
    manifest.input_digests["targets"] = digest_file(opts.targets_csv);
    for (const auto& job : jobs) manifest.runs.push_back(job.result);
    write_text_file((out_dir / "manifest.json").string(),
                    sim_manifest_json(manifest));

    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    write_text_file((out_dir / "timing.json").string(),
                    timing_json(wall, threads));

    for (const auto& job : jobs) {
        if (job.result.status != "ok") {
            std::fprintf(stderr, "run %s seed %llu failed: %s\n",
                         job.scenario.c_str(),
                         static_cast<unsigned long long>(job.seed),
                         job.result.status.c_str());
        }
    }
}

} // namespace labourflow::cli
