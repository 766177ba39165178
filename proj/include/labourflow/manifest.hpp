#pragma once

#include "labourflow/network.hpp"
#include "labourflow/params.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace labourflow {

// Content digest used to pin run inputs; FNV-1a over the raw bytes,
// rendered as "fnv1a64:<16 hex digits>".
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_bytes(const std::string& bytes);
std::string digest_file(const std::string& path);

struct RunEntry {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string file;   // relative to the manifest's directory
    std::string digest; // of the trajectory file
    std::string status; // "ok" or an error description
};

// Reproducibility record for one simulate invocation. Wall-clock time
// is intentionally kept out of this file (it lives in timing.json) so
// reruns with identical inputs produce identical manifests.
struct SimManifest {
    SimulationParams params;
    Normalization normalization = Normalization::Source;
    int first_year = 2018;
    std::vector<std::string> scenarios;
    std::vector<std::uint64_t> seeds;
    std::map<std::string, std::string> input_digests; // label -> digest
    std::vector<RunEntry> runs;
};

} // namespace labourflow
