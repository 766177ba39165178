#include "doctest.h"

#include "helpers.hpp"

#include "labourflow/dynamics.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/network.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace labourflow;
using testutil::Triplet;

namespace {

OccRegion node(const std::string& occ, const std::string& reg) {
    return {occ, reg};
}

// Six occupations in two regions with dense random flows.
MobilityNetwork random_net(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<OccRegion> nodes;
    for (int o = 0; o < 3; ++o) {
        for (int r = 0; r < 2; ++r) {
            nodes.push_back(node("1" + std::to_string(o),
                                 "R" + std::to_string(r)));
        }
    }
    std::vector<Triplet> rows;
    std::uniform_int_distribution<long long> vol(1, 30);
    for (const auto& a : nodes) {
        for (const auto& b : nodes) {
            rows.push_back({a, b, vol(rng)});
        }
    }
    return testutil::net_from(rows);
}

SimulationParams quick_params() {
    SimulationParams p;
    p.steps_per_year = 4;
    p.burn_in_steps = 8;
    return p;
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("workers are conserved exactly, step by step") {
    MobilityNetwork net = random_net(41);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int y, std::size_t i) {
            return 200.0 + 40.0 * static_cast<double>(i) -
                   15.0 * static_cast<double>(y) * (i % 2 ? 1.0 : -1.0);
        },
        4);
    SimulationParams p = quick_params();
    for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
        p.seed = seed;
        Trajectory traj = stochastic_run(net, targets, "baseline", p);
        double total0 = 0.0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            total0 += traj.e(0, i) + traj.u(0, i);
        }
        for (int t = 1; t < traj.n_steps; ++t) {
            double total = 0.0;
            for (std::size_t i = 0; i < net.size(); ++i) {
                total += traj.e(t, i) + traj.u(t, i);
            }
            CHECK(total == total0);
        }
    }
}

TEST_CASE("recorded flows reconcile every stock change") {
    MobilityNetwork net = random_net(43);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int y, std::size_t i) {
            return 150.0 + 10.0 * static_cast<double>(i + 1) *
                               (y % 2 ? 1.1 : 0.9);
        },
        3);
    SimulationParams p = quick_params();
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    for (int t = 1; t < traj.n_steps; ++t) {
        double hires_in_total = 0.0, hires_out_total = 0.0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            std::size_t c = traj.cell(t, i);
            double sep = traj.separations[c];
            double open = traj.openings[c];
            double in = traj.hires_in[c];
            double out = traj.hires_out[c];
            CHECK(traj.e(t, i) == traj.e(t - 1, i) - sep + in);
            CHECK(traj.u(t, i) == traj.u(t - 1, i) + sep - out);
            CHECK(traj.v(t, i) == traj.v(t - 1, i) + open - in);
            hires_in_total += in;
            hires_out_total += out;
        }
        CHECK(hires_in_total == hires_out_total);
    }
}

TEST_CASE("aged-vacancy series are consistent with the stock") {
    MobilityNetwork net = random_net(47);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 12,
        [](std::size_t, int, std::size_t i) {
            return 120.0 + 5.0 * static_cast<double>(i);
        },
        3);
    SimulationParams p;
    p.steps_per_year = 12;
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    for (int t = 0; t < traj.n_steps; ++t) {
        for (std::size_t i = 0; i < net.size(); ++i) {
            std::size_t c = traj.cell(t, i);
            CHECK(traj.v_age_ge[0][c] >= traj.v_age_ge[1][c]);
            CHECK(traj.v_age_ge[1][c] >= traj.v_age_ge[2][c]);
            CHECK(traj.v_age_ge[0][c] <= traj.vacancies[c]);
        }
    }
}

TEST_CASE("with all rates at zero and met demand, nothing moves") {
    MobilityNetwork net = random_net(53);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int, std::size_t) { return 120.0; }, 3);
    SimulationParams p = quick_params();
    p.sep_rate = 0.0;
    p.open_rate = 0.0;
    p.init_unemployment = 0.1;
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    for (int t = 0; t < traj.n_steps; ++t) {
        for (std::size_t i = 0; i < net.size(); ++i) {
            CHECK(traj.e(t, i) == 120.0);
            CHECK(traj.u(t, i) == 12.0);
            CHECK(traj.v(t, i) == 0.0);
        }
    }
}

TEST_CASE("a separation probability of one empties employment") {
    MobilityNetwork net = random_net(59);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int, std::size_t) { return 80.0; }, 2);
    SimulationParams p = quick_params();
    p.sep_rate = 1.0;
    p.open_rate = 0.0;
    p.open_speed = 0.0;
    p.burn_in_steps = 0;
    p.init_unemployment = 0.0;
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    double workers = 80.0 * static_cast<double>(net.size());
    for (int t = 1; t < traj.n_steps; ++t) {
        double e_total = 0.0, u_total = 0.0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            e_total += traj.e(t, i);
            u_total += traj.u(t, i);
        }
        CHECK(e_total == 0.0);
        CHECK(u_total == workers);
    }
}

TEST_CASE("applications follow the weighted vacancy mass") {
    // One origin with a 1:3 weight split toward two destinations that
    // both open an abundance of vacancies.
    std::vector<Triplet> rows = {
        {node("11", "R1"), node("12", "R1"), 1},
        {node("11", "R1"), node("13", "R1"), 3},
        {node("12", "R1"), node("11", "R1"), 1},
        {node("13", "R1"), node("11", "R1"), 1},
    };
    MobilityNetwork net = testutil::net_from(rows);
    std::size_t o = net.index.id_of(node("11", "R1"));
    std::size_t t1 = net.index.id_of(node("12", "R1"));
    std::size_t t2 = net.index.id_of(node("13", "R1"));
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 1,
        [&](std::size_t, int y, std::size_t i) {
            if (i == o) return y == 0 ? 4000.0 : 0.0;
            return y == 0 ? 0.0 : 40000.0;
        },
        2);
    SimulationParams p;
    p.steps_per_year = 1;
    p.burn_in_steps = 0;
    p.init_unemployment = 0.0;
    p.sep_rate = 0.0;
    p.sep_speed = 1.0;
    p.open_rate = 0.0;
    p.open_speed = 1.0;
    p.seed = 9;
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    REQUIRE(traj.n_steps == 2);
    double in1 = traj.hires_in[traj.cell(1, t1)];
    double in2 = traj.hires_in[traj.cell(1, t2)];
    // All 4000 workers separate and apply; slots are so plentiful that
    // nearly every application wins, so hires land close to the 1:3
    // application split (binomial noise plus a small collision loss).
    CHECK(traj.separations[traj.cell(1, o)] == 4000.0);
    CHECK(in1 + in2 <= 4000.0);
    CHECK(in1 + in2 > 3800.0);
    CHECK(in1 > 850.0);
    CHECK(in1 < 1150.0);
    CHECK(in2 / in1 > 2.5);
    CHECK(in2 / in1 < 3.5);
}

TEST_CASE("two applicants cannot fill one vacancy twice") {
    std::vector<Triplet> rows = {
        {node("11", "R1"), node("12", "R1"), 1},
        {node("12", "R1"), node("11", "R1"), 1},
    };
    MobilityNetwork net = testutil::net_from(rows);
    std::size_t o = net.index.id_of(node("11", "R1"));
    std::size_t d = net.index.id_of(node("12", "R1"));
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 1,
        [&](std::size_t, int y, std::size_t i) {
            if (i == o) return y == 0 ? 2.0 : 0.0;
            return y == 0 ? 0.0 : 1.0;
        },
        2);
    SimulationParams p;
    p.steps_per_year = 1;
    p.burn_in_steps = 0;
    p.init_unemployment = 0.0;
    p.sep_rate = 0.0;
    p.sep_speed = 1.0;
    p.open_rate = 0.0;
    p.open_speed = 1.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        p.seed = seed;
        Trajectory traj = stochastic_run(net, targets, "baseline", p);
        CHECK(traj.hires_in[traj.cell(1, d)] == 1.0);
        CHECK(traj.u(1, o) == 1.0);
        CHECK(traj.e(1, d) == 1.0);
    }
}

TEST_CASE("uniform slot choice fills one and a half of two on average") {
    std::vector<Triplet> rows = {
        {node("11", "R1"), node("12", "R1"), 1},
        {node("12", "R1"), node("11", "R1"), 1},
    };
    MobilityNetwork net = testutil::net_from(rows);
    std::size_t o = net.index.id_of(node("11", "R1"));
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 1,
        [&](std::size_t, int y, std::size_t i) {
            if (i == o) return y == 0 ? 2.0 : 0.0;
            return y == 0 ? 0.0 : 2.0;
        },
        2);
    SimulationParams p;
    p.steps_per_year = 1;
    p.burn_in_steps = 0;
    p.init_unemployment = 0.0;
    p.sep_rate = 0.0;
    p.sep_speed = 1.0;
    p.open_rate = 0.0;
    p.open_speed = 1.0;
    std::size_t d = net.index.id_of(node("12", "R1"));
    double sum = 0.0;
    const int reps = 4000;
    for (int k = 0; k < reps; ++k) {
        p.seed = 1000 + static_cast<std::uint64_t>(k);
        Trajectory traj = stochastic_run(net, targets, "baseline", p);
        double h = traj.hires_in[traj.cell(1, d)];
        CHECK(h >= 1.0);
        CHECK(h <= 2.0);
        sum += h;
    }
    // Two applications over two slots: both land on the same slot half
    // the time, so the mean filled count is 1.5.
    CHECK(std::abs(sum / reps - 1.5) < 0.06);
}

TEST_CASE("unreachable vacancies age without limit") {
    // Node X has no incoming network weight, so its vacancies can never
    // be filled: the aged stock must equal the total stock lagged by
    // the age threshold.
    std::vector<Triplet> rows = {
        {node("11", "R1"), node("11", "R1"), 5},
        {node("12", "R1"), node("11", "R1"), 5},
    };
    MobilityNetwork net = testutil::net_from(rows);
    std::size_t x = net.index.id_of(node("12", "R1"));
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 12,
        [&](std::size_t, int y, std::size_t i) {
            if (i == x) return y == 0 ? 10.0 : 30.0;
            return 100.0;
        },
        3);
    SimulationParams p;
    p.steps_per_year = 12;
    p.burn_in_steps = 0;
    p.sep_rate = 0.0;
    p.seed = 5;
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    for (int t = 0; t < traj.n_steps; ++t) {
        std::size_t c = traj.cell(t, x);
        if (t >= 3) {
            CHECK(traj.v_age_ge[0][c] == traj.v(t - 3, x));
        }
        if (t >= 6) {
            CHECK(traj.v_age_ge[1][c] == traj.v(t - 6, x));
        }
        if (t >= 12) {
            CHECK(traj.v_age_ge[2][c] == traj.v(t - 12, x));
        }
    }
    CHECK(traj.v(traj.n_steps - 1, x) > 0.0);
}

TEST_CASE("identical seeds give identical runs; new seeds differ") {
    MobilityNetwork net = random_net(61);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int, std::size_t i) {
            return 90.0 + 10.0 * static_cast<double>(i);
        },
        3);
    SimulationParams p = quick_params();
    p.seed = 123;
    Trajectory a = stochastic_run(net, targets, "baseline", p);
    Trajectory b = stochastic_run(net, targets, "baseline", p);
    CHECK(a.employed == b.employed);
    CHECK(a.unemployed == b.unemployed);
    CHECK(a.vacancies == b.vacancies);
    p.seed = 124;
    Trajectory c = stochastic_run(net, targets, "baseline", p);
    CHECK(a.employed != c.employed);
}

TEST_CASE("the population divisor shrinks the simulated economy") {
    MobilityNetwork net = random_net(67);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int, std::size_t) { return 600.0; }, 2);
    SimulationParams p = quick_params();
    p.scale = 3.0;
    p.burn_in_steps = 0;
    p.init_unemployment = 0.0;
    p.sep_rate = 0.0;
    p.open_rate = 0.0;
    Trajectory traj = stochastic_run(net, targets, "baseline", p);
    for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(traj.e(0, i) == 200.0);
    }
}

TEST_CASE("mean-field runs conserve workers and stay non-negative") {
    MobilityNetwork net = random_net(71);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int y, std::size_t i) {
            return 150.0 + 12.0 * static_cast<double>(i) -
                   20.0 * static_cast<double>(y);
        },
        4);
    SimulationParams p = quick_params();
    p.mode = SimMode::MeanField;
    Trajectory traj = meanfield_run(net, targets, "baseline", p);
    double total0 = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        total0 += traj.e(0, i) + traj.u(0, i);
    }
    for (int t = 0; t < traj.n_steps; ++t) {
        double total = 0.0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            total += traj.e(t, i) + traj.u(t, i);
            CHECK(traj.e(t, i) >= 0.0);
            CHECK(traj.u(t, i) >= 0.0);
            CHECK(traj.v(t, i) >= 0.0);
            if (t >= 1) {
                std::size_t c = traj.cell(t, i);
                CHECK(traj.separations[c] >= 0.0);
                CHECK(traj.openings[c] >= 0.0);
                CHECK(traj.hires_in[c] >= 0.0);
                CHECK(traj.hires_out[c] >= 0.0);
            }
        }
        CHECK(std::abs(total - total0) <= 1e-9 * total0);
    }
}

TEST_CASE("both modes start from the same state on integer-clean inputs") {
    MobilityNetwork net = random_net(73);
    TargetDemand targets = testutil::targets_from(
        net.index, {"baseline"}, 2018, 4,
        [](std::size_t, int, std::size_t) { return 2000.0; }, 2);
    SimulationParams p = quick_params();
    p.burn_in_steps = 0;
    Trajectory st = stochastic_run(net, targets, "baseline", p);
    p.mode = SimMode::MeanField;
    Trajectory mf = meanfield_run(net, targets, "baseline", p);
    for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(st.e(0, i) == mf.e(0, i));
        CHECK(st.u(0, i) == mf.u(0, i));
        CHECK(st.v(0, i) == mf.v(0, i));
    }
}

} // TEST_SUITE
