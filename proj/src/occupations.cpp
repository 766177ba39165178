#include "labourflow/occupations.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/nodes.hpp"

#include <cctype>

namespace labourflow {

namespace {

void require_digits(const std::string& code, const std::string& context) {
    if (code.empty()) throw InputError(context + ": empty occupation code");
    for (char c : code) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw InputError(context + ": occupation code \"" + code +
                             "\" must be decimal digits");
        }
    }
}

} // namespace

OccupationHierarchy OccupationHierarchy::load(const std::string& path) {
    CsvReader reader(path, "code,parent_code,label");
    OccupationHierarchy h;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const std::string& code = f[0];
        const std::string& parent = f[1];
        std::string context = path + ":" + std::to_string(reader.row_number());
        require_digits(code, context);
        if (h.labels_.count(code)) {
            reader.fail("duplicate code \"" + code + "\"");
        }
        if (code.size() == 1) {
            if (!parent.empty()) {
                reader.fail("top-level code \"" + code +
                            "\" must have an empty parent");
            }
        } else {
            std::string expected = code.substr(0, code.size() - 1);
            if (parent != expected) {
                reader.fail("code \"" + code + "\" must have parent \"" +
                            expected + "\", found \"" + parent + "\"");
            }
        }
        h.labels_[code] = f[2];
    }
    // Every non-root code's parent must itself be listed.
    for (const auto& [code, label] : h.labels_) {
        (void)label;
        if (code.size() > 1 && !h.labels_.count(code.substr(0, code.size() - 1))) {
            throw InputError(path + ": code \"" + code +
                             "\" has no listed parent");
        }
    }
    if (h.labels_.empty()) throw InputError(path + ": no occupation codes");
    return h;
}

OccupationHierarchy OccupationHierarchy::from_codes(
    const std::vector<std::string>& codes) {
    OccupationHierarchy h;
    for (const auto& code : codes) {
        require_digits(code, "occupation set");
        for (std::size_t len = 1; len <= code.size(); ++len) {
            std::string prefix = code.substr(0, len);
            h.labels_.emplace(prefix, prefix);
        }
    }
    return h;
}

std::optional<std::string> OccupationHierarchy::parent(
    const std::string& code) const {
    if (code.size() <= 1) return std::nullopt;
    return code.substr(0, code.size() - 1);
}

int OccupationHierarchy::level(const std::string& code) const {
    return static_cast<int>(code.size());
}

const std::string& OccupationHierarchy::label(const std::string& code) const {
    auto it = labels_.find(code);
    if (it == labels_.end()) {
        throw InputError("unknown occupation code \"" + code + "\"");
    }
    return it->second;
}

std::vector<std::string> OccupationHierarchy::codes() const {
    std::vector<std::string> out;
    out.reserve(labels_.size());
    for (const auto& [code, label] : labels_) {
        (void)label;
        out.push_back(code);
    }
    return out;
}

RegionManifest RegionManifest::load(const std::string& path) {
    CsvReader reader(path, "region_id,label");
    RegionManifest m;
    std::vector<std::string> f;
    while (reader.next(f)) {
        validate_identifier(f[0], "region id");
        if (m.labels_.count(f[0])) reader.fail("duplicate region \"" + f[0] + "\"");
        m.labels_[f[0]] = f[1];
    }
    if (m.labels_.empty()) throw InputError(path + ": no regions");
    return m;
}

RegionManifest RegionManifest::from_ids(const std::vector<std::string>& ids) {
    RegionManifest m;
    for (const auto& id : ids) {
        validate_identifier(id, "region id");
        m.labels_.emplace(id, id);
    }
    return m;
}

const std::string& RegionManifest::label(const std::string& id) const {
    auto it = labels_.find(id);
    if (it == labels_.end()) throw InputError("unknown region \"" + id + "\"");
    return it->second;
}

std::vector<std::string> RegionManifest::ids() const {
    std::vector<std::string> out;
    out.reserve(labels_.size());
    for (const auto& [id, label] : labels_) {
        (void)label;
        out.push_back(id);
    }
    return out;
}

} // namespace labourflow
