#include "commands.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/manifest.hpp"
#include "labourflow/synthetic.hpp"

#include <filesystem>
#include <map>

namespace labourflow::cli {

void cmd_gen_synthetic(const GenSyntheticOpts& opts) {
    namespace fs = std::filesystem;
    opts.spec.validate();
    SyntheticData data = gen_synthetic(opts.spec);

    fs::create_directories(opts.out_dir);
    const std::pair<const char*, const std::string*> files[] = {
        {"transitions.csv", &data.transitions_csv},
        {"hierarchy.csv", &data.hierarchy_csv},
        {"regions.csv", &data.regions_csv},
        {"sector_demand.csv", &data.sector_demand_csv},
        {"mix.csv", &data.mix_csv},
    };
    std::map<std::string, std::string> digests;
    for (const auto& [name, body] : files) {
        write_text_file((fs::path(opts.out_dir) / name).string(), *body);
        digests[name] = digest_bytes(*body);
    }
    write_text_file((fs::path(opts.out_dir) / "gen_manifest.json").string(),
                    synthetic_manifest_json(opts.spec, digests));
}

} // namespace labourflow::cli
