#include "labourflow/dynamics.hpp"

#include "labourflow/errors.hpp"
#include "labourflow/rng.hpp"
#include "labourflow/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace labourflow {

namespace {

struct StochState {
    std::vector<long long> employed;
    std::vector<long long> unemployed;
    std::vector<VacancyBook> books;
};

struct StepFlows {
    std::vector<long long> separations;
    std::vector<long long> openings;
    std::vector<long long> hires_in;
    std::vector<long long> hires_out;
};

void check_nodes_match(const MobilityNetwork& net, const TargetDemand& targets) {
    if (!(net.index.nodes() == targets.index.nodes())) {
        throw InputError(
            "network and target demand describe different node sets");
    }
}

StepFlows stochastic_step(StochState& st, const MobilityNetwork& net,
                          const std::vector<double>& d_next,
                          const SimulationParams& params, Rng& rng) {
    const std::size_t n = st.employed.size();
    StepFlows flows;
    flows.separations.assign(n, 0);
    flows.openings.assign(n, 0);
    flows.hires_in.assign(n, 0);
    flows.hires_out.assign(n, 0);

    std::vector<long long> pool(n, 0);
    std::vector<long long> v_avail(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        long long e = st.employed[i];
        long long v = st.books[i].total();
        double delta = static_cast<double>(e + v) - d_next[i];

        double p_sep = params.sep_rate;
        if (e > 0 && delta > 0.0) {
            p_sep += (1.0 - params.sep_rate) * params.sep_speed * delta /
                     static_cast<double>(e);
        }
        long long b = rng.binomial(e, std::min(1.0, p_sep));

        long long c = 0;
        if (e > 0) {
            double p_open = params.open_rate;
            if (delta < 0.0) {
                p_open += (1.0 - params.open_rate) * params.open_speed *
                          (-delta) / static_cast<double>(e);
            }
            c = rng.binomial(e, std::min(1.0, p_open));
        } else if (delta < 0.0) {
            c = static_cast<long long>(std::ceil(params.open_speed * -delta));
        }

        flows.separations[i] = b;
        flows.openings[i] = c;
        st.employed[i] = e - b;
        pool[i] = st.unemployed[i] + b;
        st.books[i].age_and_open(c);
        v_avail[i] = v + c;
    }

    // Applications: worker ids are dense, grouped by origin node.
    std::vector<std::size_t> worker_offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        worker_offset[i + 1] =
            worker_offset[i] + static_cast<std::size_t>(pool[i]);
    }
    std::vector<std::vector<std::uint32_t>> apps_at(n);
    std::vector<double> w;
    std::vector<std::uint32_t> targets_of_row;
    for (std::size_t i = 0; i < n; ++i) {
        if (pool[i] == 0) continue;
        w.clear();
        targets_of_row.clear();
        for (std::size_t k = net.row_offsets[i]; k < net.row_offsets[i + 1];
             ++k) {
            std::uint32_t j = net.cols[k];
            if (v_avail[j] <= 0) continue;
            double weight = net.weights[k] * static_cast<double>(v_avail[j]);
            if (weight > 0.0) {
                w.push_back(weight);
                targets_of_row.push_back(j);
            }
        }
        if (w.empty()) continue;
        std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
        for (long long worker = 0; worker < pool[i]; ++worker) {
            std::uint32_t worker_id =
                static_cast<std::uint32_t>(worker_offset[i] +
                                           static_cast<std::size_t>(worker));
            for (int a = 0; a < params.apps_per_worker; ++a) {
                std::size_t j = targets_of_row[pick(rng.raw())];
                apps_at[j].push_back(worker_id);
            }
        }
    }

    // Matching: each application hits a uniform vacancy slot; each hit
    // slot offers to one uniformly kept applicant.
    struct SlotState {
        std::uint32_t seen = 0;
        std::uint32_t winner = 0;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> offers; // worker, node
    std::map<long long, SlotState> slots;
    for (std::size_t j = 0; j < n; ++j) {
        if (apps_at[j].empty()) continue;
        slots.clear();
        for (std::uint32_t worker : apps_at[j]) {
            long long slot = static_cast<long long>(
                rng.uniform_index(static_cast<std::size_t>(v_avail[j])));
            SlotState& s = slots[slot];
            ++s.seen;
            if (rng.uniform_index(s.seen) == 0) s.winner = worker;
        }
        for (const auto& [slot, s] : slots) {
            (void)slot;
            offers.emplace_back(s.winner, static_cast<std::uint32_t>(j));
        }
    }

    // A worker with several offers accepts one uniformly; the passed-over
    // vacancies stay open.
    std::stable_sort(offers.begin(), offers.end(),
                     [](const auto& a, const auto& b) {
                         return a.first < b.first;
                     });
    std::size_t k = 0;
    while (k < offers.size()) {
        std::size_t end = k;
        while (end < offers.size() && offers[end].first == offers[k].first) {
            ++end;
        }
        std::size_t chosen = k + (end - k == 1 ? 0 : rng.uniform_index(end - k));
        std::uint32_t dest = offers[chosen].second;
        std::uint32_t worker = offers[k].first;
        std::size_t origin =
            static_cast<std::size_t>(
                std::upper_bound(worker_offset.begin(), worker_offset.end(),
                                 worker) -
                worker_offset.begin()) -
            1;
        ++flows.hires_in[dest];
        ++flows.hires_out[origin];
        k = end;
    }

    for (std::size_t i = 0; i < n; ++i) {
        st.employed[i] += flows.hires_in[i];
        st.unemployed[i] = pool[i] - flows.hires_out[i];
        remove_vacancies_uniform(st.books[i], flows.hires_in[i], rng);
        if (st.employed[i] < 0 || st.unemployed[i] < 0) {
            throw InternalFault("negative count after step");
        }
    }
    return flows;
}

} // namespace

Trajectory stochastic_run(const MobilityNetwork& net,
                          const TargetDemand& targets,
                          const std::string& scenario,
                          const SimulationParams& params) {
    params.validate();
    check_nodes_match(net, targets);
    const std::size_t n = net.size();
    const std::size_t s = targets.scenario_pos(scenario);
    const int total_steps = targets.total_steps();
    const int age_cap = threshold_steps(kAgeThresholdMonths[2],
                                        params.steps_per_year);

    Rng rng(params.seed);
    StochState st;
    st.employed.resize(n);
    st.unemployed.resize(n);
    st.books.assign(n, VacancyBook(age_cap));

    for (std::size_t i = 0; i < n; ++i) {
        double e_real = targets.at(s, 0, i) / params.scale;
        long long e = static_cast<long long>(std::floor(e_real));
        double frac = e_real - static_cast<double>(e);
        if (rng.bernoulli(frac)) ++e;
        st.employed[i] = e;
        st.unemployed[i] = std::llround(params.init_unemployment *
                                        static_cast<double>(e));
        st.books[i].reset(std::llround(params.open_rate *
                                       static_cast<double>(e)));
    }

    std::vector<double> d_next(n);
    auto load_target = [&](int t) {
        for (std::size_t i = 0; i < n; ++i) {
            d_next[i] = targets.at(s, t, i) / params.scale;
        }
    };

    load_target(0);
    for (int b = 0; b < params.burn_in_steps; ++b) {
        stochastic_step(st, net, d_next, params, rng);
    }

    Trajectory traj;
    traj.index = net.index;
    traj.steps_per_year = params.steps_per_year;
    traj.first_year = targets.first_year;
    traj.integer_counts = true;
    traj.allocate(total_steps);
    int thr[3];
    for (int k = 0; k < 3; ++k) {
        thr[k] = threshold_steps(kAgeThresholdMonths[k], params.steps_per_year);
    }

    auto record = [&](int t, const StepFlows* flows) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = traj.cell(t, i);
            traj.employed[c] = static_cast<double>(st.employed[i]);
            traj.unemployed[c] = static_cast<double>(st.unemployed[i]);
            traj.vacancies[c] = static_cast<double>(st.books[i].total());
            for (int k2 = 0; k2 < 3; ++k2) {
                traj.v_age_ge[k2][c] =
                    static_cast<double>(st.books[i].at_least(thr[k2]));
            }
            if (flows) {
                traj.separations[c] =
                    static_cast<double>(flows->separations[i]);
                traj.openings[c] = static_cast<double>(flows->openings[i]);
                traj.hires_in[c] = static_cast<double>(flows->hires_in[i]);
                traj.hires_out[c] = static_cast<double>(flows->hires_out[i]);
            }
        }
    };

    record(0, nullptr);
    for (int t = 1; t < total_steps; ++t) {
        load_target(t);
        StepFlows flows = stochastic_step(st, net, d_next, params, rng);
        record(t, &flows);
    }
    return traj;
}

Trajectory simulate_run(const MobilityNetwork& net, const TargetDemand& targets,
                        const std::string& scenario,
                        const SimulationParams& params) {
    if (params.mode == SimMode::MeanField) {
        return meanfield_run(net, targets, scenario, params);
    }
    return stochastic_run(net, targets, scenario, params);
}

} // namespace labourflow
