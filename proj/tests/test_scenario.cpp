#include "doctest.h"

#include "helpers.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/scenario.hpp"

#include <cmath>
#include <random>

using namespace labourflow;

namespace {

void write(const std::string& path, const std::string& body) {
    write_text_file(path, body);
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("sector demand maps onto occupations through the mix") {
    testutil::TempDir dir;
    write(dir.file("demand.csv"),
          "scenario,sector,region,year,demand\n"
          "baseline,secA,R1,2020,100\n"
          "baseline,secA,R1,2021,110\n"
          "baseline,secB,R1,2020,50\n"
          "baseline,secB,R1,2021,40\n");
    write(dir.file("mix.csv"),
          "sector,region,occupation,share\n"
          "secA,R1,11,0.8\n"
          "secA,R1,12,0.2\n"
          "secB,R1,12,1\n");
    SectorDemand sectors = load_sector_demand(dir.file("demand.csv"));
    OccupationMix mix = load_mix(dir.file("mix.csv"), std::nullopt);
    NodeDemand d = map_sector_to_occupation(sectors, mix);
    REQUIRE(d.index.size() == 2);
    std::size_t i11 = d.index.id_of({"11", "R1"});
    std::size_t i12 = d.index.id_of({"12", "R1"});
    CHECK(d.at(0, 0, i11) == doctest::Approx(80.0).epsilon(1e-14));
    CHECK(d.at(0, 0, i12) == doctest::Approx(70.0).epsilon(1e-14));
    CHECK(d.at(0, 1, i11) == doctest::Approx(88.0).epsilon(1e-14));
    CHECK(d.at(0, 1, i12) == doctest::Approx(62.0).epsilon(1e-14));
}

TEST_CASE("normalization pins every year to the base-year total") {
    testutil::TempDir dir;
    std::mt19937_64 rng(13);
    std::string demand = "scenario,sector,region,year,demand\n";
    std::uniform_real_distribution<double> level(50.0, 400.0);
    for (const char* scen : {"baseline", "boom"}) {
        for (const char* sec : {"secA", "secB", "secC"}) {
            for (int year = 2018; year <= 2024; ++year) {
                demand += std::string(scen) + "," + sec + ",R1," +
                          std::to_string(year) + "," + fmt_double(level(rng)) +
                          "\n";
            }
        }
    }
    write(dir.file("demand.csv"), demand);
    write(dir.file("mix.csv"),
          "sector,region,occupation,share\n"
          "secA,R1,11,1\nsecB,R1,12,1\nsecC,R1,13,1\n");
    SectorDemand sectors = load_sector_demand(dir.file("demand.csv"));
    NodeDemand d = map_sector_to_occupation(
        sectors, load_mix(dir.file("mix.csv"), std::nullopt));

    // Reference: scale factor per year from the baseline totals.
    NodeDemand raw = d;
    normalize_demand(d);
    const std::size_t n = d.index.size();
    std::size_t base_pos = 0;
    while (d.scenarios[base_pos] != "baseline") ++base_pos;
    std::vector<double> base_totals(static_cast<std::size_t>(d.n_years), 0.0);
    for (int y = 0; y < d.n_years; ++y) {
        for (std::size_t i = 0; i < n; ++i) {
            base_totals[static_cast<std::size_t>(y)] += raw.at(base_pos, y, i);
        }
    }
    for (std::size_t s = 0; s < d.scenarios.size(); ++s) {
        for (int y = 0; y < d.n_years; ++y) {
            double factor =
                base_totals[0] / base_totals[static_cast<std::size_t>(y)];
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(d.at(s, y, i) ==
                      doctest::Approx(raw.at(s, y, i) * factor)
                          .epsilon(1e-12));
            }
        }
    }
    for (int y = 0; y < d.n_years; ++y) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += d.at(base_pos, y, i);
        CHECK(std::abs(total - base_totals[0]) <=
              1e-9 * std::abs(base_totals[0]));
    }
}

TEST_CASE("interpolation ramps linearly between yearly anchors") {
    NodeIndex idx(std::vector<OccRegion>{{"11", "R1"}});
    NodeDemand d;
    d.scenarios = {"baseline"};
    d.index = idx;
    d.first_year = 2020;
    d.n_years = 2;
    d.demand = {{100.0, 250.0}};
    TargetDemand t = interpolate_demand(d, 52);
    REQUIRE(t.total_steps() == 53);
    CHECK(t.at(0, 0, 0) == 100.0);
    CHECK(t.at(0, 52, 0) == 250.0);
    CHECK(t.at(0, 26, 0) == doctest::Approx(175.0).epsilon(1e-14));
    for (int k = 0; k <= 52; ++k) {
        double expected = 100.0 + 150.0 * k / 52.0;
        CHECK(t.at(0, k, 0) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("yearly anchors are taken over verbatim, never recomputed") {
    std::mt19937_64 rng(29);
    NodeIndex idx({{"11", "R1"}, {"12", "R1"}, {"11", "R2"}});
    NodeDemand d;
    d.scenarios = {"baseline"};
    d.index = idx;
    d.first_year = 2018;
    d.n_years = 5;
    std::uniform_real_distribution<double> level(10.0, 500.0);
    d.demand.assign(1, {});
    for (int k = 0; k < 5 * 3; ++k) d.demand[0].push_back(level(rng));
    for (int steps : {1, 4, 12}) {
        TargetDemand t = interpolate_demand(d, steps);
        for (int y = 0; y < 5; ++y) {
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(t.at(0, y * steps, i) == d.at(0, y, i));
            }
        }
        // Linearity keeps every step inside its bracketing anchors.
        for (int t_step = 0; t_step < t.total_steps(); ++t_step) {
            int y = std::min(4, t_step / steps);
            int lo_year = std::min(y, 3);
            for (std::size_t i = 0; i < 3; ++i) {
                double a = d.at(0, lo_year, i), b = d.at(0, lo_year + 1, i);
                double low = std::min(a, b) - 1e-9;
                double high = std::max(a, b) + 1e-9;
                if (t_step >= lo_year * steps &&
                    t_step <= (lo_year + 1) * steps) {
                    CHECK(t.at(0, t_step, i) >= low);
                    CHECK(t.at(0, t_step, i) <= high);
                }
            }
        }
    }
}

TEST_CASE("reallocation totals gains and losses per broad group") {
    NodeIndex idx({{"11", "R1"}, {"12", "R1"}, {"21", "R1"}});
    NodeDemand d;
    d.scenarios = {"baseline"};
    d.index = idx;
    d.first_year = 2018;
    d.n_years = 3;
    // Node order is sorted: 11:R1, 12:R1, 21:R1.
    d.demand = {{
        100, 50, 80, //
        90, 60, 80,  //
        120, 30, 70  //
    }};
    auto rows = reallocation_volume(d, 0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].group == "1");
    CHECK(rows[0].created == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(rows[0].destroyed == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(rows[1].group == "2");
    CHECK(rows[1].created == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rows[1].destroyed == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("target CSV round trip preserves every value") {
    std::mt19937_64 rng(31);
    NodeIndex idx({{"11", "R1"}, {"12", "R2"}});
    NodeDemand d;
    d.scenarios = {"baseline", "shock"};
    d.index = idx;
    d.first_year = 2019;
    d.n_years = 3;
    std::uniform_real_distribution<double> level(1.0, 300.0);
    d.demand.assign(2, {});
    for (auto& s : d.demand) {
        for (int k = 0; k < 3 * 2; ++k) s.push_back(level(rng));
    }
    TargetDemand t = interpolate_demand(d, 6);
    testutil::TempDir dir;
    write(dir.file("targets.csv"), target_demand_to_csv(t));
    TargetDemand back = target_demand_from_csv(dir.file("targets.csv"), 6, 2019);
    REQUIRE(back.scenarios == t.scenarios);
    REQUIRE(back.index.nodes() == t.index.nodes());
    REQUIRE(back.total_steps() == t.total_steps());
    for (std::size_t s = 0; s < 2; ++s) {
        for (int step = 0; step < t.total_steps(); ++step) {
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(back.at(s, step, i) == t.at(s, step, i));
            }
        }
    }
}

TEST_CASE("mix files with a year column can average or select") {
    testutil::TempDir dir;
    write(dir.file("mix.csv"),
          "sector,region,occupation,share,year\n"
          "secA,R1,11,0.6,2018\n"
          "secA,R1,12,0.4,2018\n"
          "secA,R1,11,0.8,2019\n"
          "secA,R1,12,0.2,2019\n");
    OccupationMix averaged = load_mix(dir.file("mix.csv"), std::nullopt);
    CHECK(averaged.shares.at({"secA", "R1"}).at("11") ==
          doctest::Approx(0.7).epsilon(1e-14));
    OccupationMix y2019 = load_mix(dir.file("mix.csv"), 2019);
    CHECK(y2019.shares.at({"secA", "R1"}).at("11") ==
          doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(load_mix(dir.file("mix.csv"), 2030), InputError);

    write(dir.file("noyear.csv"),
          "sector,region,occupation,share\nsecA,R1,11,1\n");
    CHECK_THROWS_AS(load_mix(dir.file("noyear.csv"), 2019), InputError);
}

TEST_CASE("merge maps rewrite the mix with prefix fallback") {
    OccupationMix mix;
    mix.shares[{"secA", "R1"}] = {{"2311", 0.5}, {"2312", 0.3}, {"4100", 0.2}};
    std::map<std::string, std::string> code_map = {
        {"231", "231"}, {"4100", "4100"}};
    OccupationMix out = remap_mix(mix, code_map);
    const auto& dist = out.shares.at({"secA", "R1"});
    CHECK(dist.at("231") == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(dist.at("4100") == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(dist.count("2311") == 0);

    std::map<std::string, std::string> empty_map = {{"9", "9"}};
    CHECK_THROWS_AS(remap_mix(mix, empty_map), InputError);
}

TEST_CASE("malformed inputs are refused with position info") {
    testutil::TempDir dir;

    write(dir.file("gap.csv"),
          "scenario,sector,region,year,demand\n"
          "baseline,secA,R1,2020,10\n"
          "baseline,secA,R1,2022,10\n");
    CHECK_THROWS_AS(load_sector_demand(dir.file("gap.csv")), InputError);

    write(dir.file("neg.csv"),
          "scenario,sector,region,year,demand\n"
          "baseline,secA,R1,2020,-5\n");
    CHECK_THROWS_AS(load_sector_demand(dir.file("neg.csv")), InputError);

    write(dir.file("nobase.csv"),
          "scenario,sector,region,year,demand\n"
          "boom,secA,R1,2020,5\n");
    CHECK_THROWS_AS(load_sector_demand(dir.file("nobase.csv")), InputError);

    write(dir.file("dupe.csv"),
          "scenario,sector,region,year,demand\n"
          "baseline,secA,R1,2020,5\n"
          "baseline,secA,R1,2020,6\n");
    CHECK_THROWS_AS(load_sector_demand(dir.file("dupe.csv")), InputError);

    write(dir.file("badshare.csv"),
          "sector,region,occupation,share\n"
          "secA,R1,11,0.5\n"
          "secA,R1,12,0.3\n");
    CHECK_THROWS_AS(load_mix(dir.file("badshare.csv"), std::nullopt),
                    InputError);

    // A sector-region in the demand file but absent from the mix.
    write(dir.file("demand.csv"),
          "scenario,sector,region,year,demand\n"
          "baseline,secA,R2,2020,10\n");
    write(dir.file("mix.csv"),
          "sector,region,occupation,share\nsecA,R1,11,1\n");
    SectorDemand sectors = load_sector_demand(dir.file("demand.csv"));
    OccupationMix mix = load_mix(dir.file("mix.csv"), std::nullopt);
    CHECK_THROWS_AS(map_sector_to_occupation(sectors, mix), InputError);
}

TEST_CASE("a zero baseline year cannot anchor the normalization") {
    NodeIndex idx(std::vector<OccRegion>{{"11", "R1"}});
    NodeDemand d;
    d.scenarios = {"baseline"};
    d.index = idx;
    d.first_year = 2018;
    d.n_years = 2;
    d.demand = {{0.0, 10.0}};
    CHECK_THROWS_AS(normalize_demand(d), InputError);
}

} // TEST_SUITE
