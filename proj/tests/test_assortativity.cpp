#include "doctest.h"

#include "helpers.hpp"

#include "labourflow/assortativity.hpp"
#include "labourflow/errors.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace labourflow;
using testutil::Triplet;

namespace {

OccRegion node(const std::string& occ, const std::string& reg) {
    return {occ, reg};
}

// Reference computation straight from the mixing-matrix definition:
// accumulate e[k][l] edge by edge, then apply the formula.
std::optional<double> oracle_assortativity(
    const MobilityNetwork& net, const std::vector<std::size_t>& cat,
    std::size_t n_cat) {
    std::vector<std::vector<double>> e(n_cat, std::vector<double>(n_cat, 0.0));
    double total = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        for (std::size_t j = 0; j < net.size(); ++j) {
            double w = net.weight(i, j);
            e[cat[i]][cat[j]] += w;
            total += w;
        }
    }
    double trace = 0.0, ab = 0.0;
    for (std::size_t k = 0; k < n_cat; ++k) {
        double a = 0.0, b = 0.0;
        for (std::size_t l = 0; l < n_cat; ++l) {
            a += e[k][l] / total;
            b += e[l][k] / total;
        }
        trace += e[k][k] / total;
        ab += a * b;
    }
    if (std::abs(1.0 - ab) < 1e-15) return std::nullopt;
    return (trace - ab) / (1.0 - ab);
}

} // namespace

TEST_SUITE("assortativity") {

TEST_CASE("pure within-category mixing scores one") {
    MobilityNetwork net = testutil::net_from({
        {node("11", "R1"), node("11", "R1"), 1},
        {node("22", "R2"), node("22", "R2"), 1},
    });
    auto cat = categories_by_region(net.index);
    auto r = assortativity(net, cat, 2);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r - 1.0) <= 1e-12);
}

TEST_CASE("uniform mixing scores zero") {
    MobilityNetwork net = testutil::net_from({
        {node("11", "R1"), node("11", "R1"), 1},
        {node("11", "R1"), node("22", "R2"), 1},
        {node("22", "R2"), node("11", "R1"), 1},
        {node("22", "R2"), node("22", "R2"), 1},
    });
    auto cat = categories_by_region(net.index);
    auto r = assortativity(net, cat, 2);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r) <= 1e-12);
}

TEST_CASE("4-vs-1 mixing scores exactly 0.6") {
    MobilityNetwork net = testutil::net_from({
        {node("11", "R1"), node("11", "R1"), 4},
        {node("11", "R1"), node("22", "R2"), 1},
        {node("22", "R2"), node("11", "R1"), 1},
        {node("22", "R2"), node("22", "R2"), 4},
    });
    auto cat = categories_by_region(net.index);
    auto r = assortativity(net, cat, 2);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r - 0.6) <= 1e-12);
}

TEST_CASE("matches the mixing-matrix reference on random networks") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Triplet> rows;
        std::uniform_int_distribution<int> occ(0, 5), reg(0, 3);
        std::uniform_int_distribution<long long> vol(1, 40);
        for (int k = 0; k < 60; ++k) {
            rows.push_back({node("1" + std::to_string(occ(rng)),
                                 "R" + std::to_string(reg(rng))),
                            node("1" + std::to_string(occ(rng)),
                                 "R" + std::to_string(reg(rng))),
                            vol(rng)});
        }
        Normalization norm = trial % 2 == 0 ? Normalization::Source
                                            : Normalization::Destination;
        MobilityNetwork net = testutil::net_from(rows, norm);
        std::vector<std::string> names;
        auto cat = categories_by_region(net.index, &names);
        auto got = assortativity(net, cat, names.size());
        auto want = oracle_assortativity(net, cat, names.size());
        REQUIRE(got.has_value() == want.has_value());
        if (got) CHECK(std::abs(*got - *want) <= 1e-12);
    }
}

TEST_CASE("scaling all counts leaves the score unchanged") {
    std::vector<Triplet> base = {
        {node("11", "R1"), node("12", "R2"), 3},
        {node("12", "R2"), node("11", "R1"), 2},
        {node("11", "R1"), node("11", "R1"), 7},
        {node("12", "R2"), node("12", "R2"), 5},
    };
    std::vector<Triplet> scaled = base;
    for (auto& t : scaled) t.count *= 9;
    auto cat_of = [](const MobilityNetwork& n) {
        return categories_by_region(n.index);
    };
    MobilityNetwork a = testutil::net_from(base);
    MobilityNetwork b = testutil::net_from(scaled);
    auto ra = assortativity(a, cat_of(a), 2);
    auto rb = assortativity(b, cat_of(b), 2);
    REQUIRE(ra.has_value());
    REQUIRE(rb.has_value());
    CHECK(std::abs(*ra - *rb) <= 1e-12);
}

TEST_CASE("complete networks mix perfectly evenly") {
    std::vector<OccRegion> nodes;
    for (int o = 0; o < 4; ++o) {
        for (int r = 0; r < 3; ++r) {
            nodes.push_back(node("1" + std::to_string(o),
                                 "R" + std::to_string(r)));
        }
    }
    MobilityNetwork net = complete_network(NodeIndex(nodes));
    auto cat = categories_by_region(net.index);
    auto r = assortativity(net, cat, 3);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r) <= 1e-12);
}

TEST_CASE("a single category has no defined score") {
    MobilityNetwork net = testutil::net_from({
        {node("11", "R1"), node("12", "R1"), 1},
        {node("12", "R1"), node("11", "R1"), 1},
    });
    auto cat = categories_by_region(net.index);
    CHECK(!assortativity(net, cat, 1).has_value());
}

TEST_CASE("broad groups come from the leading digit") {
    CHECK(broad_group_of("2311") == "2");
    CHECK(broad_group_of("9") == "9");
    NodeIndex idx({node("11", "R1"), node("12", "R1"), node("21", "R1")});
    std::vector<std::string> names;
    auto cat = categories_by_broad_group(idx, &names);
    REQUIRE(names.size() == 2);
    CHECK(cat[0] == cat[1]);
    CHECK(cat[0] != cat[2]);
}

} // TEST_SUITE
