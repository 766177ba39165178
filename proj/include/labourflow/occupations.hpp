#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace labourflow {

// Hierarchical occupation codes. A code's parent is its prefix one digit
// shorter; top-level codes have an empty parent. Loaded from CSV with
// header "code,parent_code,label".
class OccupationHierarchy {
public:
    static OccupationHierarchy load(const std::string& path);

    // Builds the hierarchy implied by a set of codes alone: every
    // nonempty prefix of each code becomes a known code.
    static OccupationHierarchy from_codes(const std::vector<std::string>& codes);

    bool contains(const std::string& code) const { return labels_.count(code) != 0; }

    // Parent code (one digit shorter prefix); empty optional at top level.
    std::optional<std::string> parent(const std::string& code) const;

    int level(const std::string& code) const; // digit count
    const std::string& label(const std::string& code) const;

    std::vector<std::string> codes() const;

private:
    std::map<std::string, std::string> labels_;
};

// Region manifest: the closed set of regions a dataset may reference.
// Loaded from CSV with header "region_id,label".
class RegionManifest {
public:
    static RegionManifest load(const std::string& path);
    static RegionManifest from_ids(const std::vector<std::string>& ids);

    bool contains(const std::string& id) const { return labels_.count(id) != 0; }
    const std::string& label(const std::string& id) const;
    std::vector<std::string> ids() const;
    std::size_t size() const { return labels_.size(); }

private:
    std::map<std::string, std::string> labels_;
};

} // namespace labourflow
