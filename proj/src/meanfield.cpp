#include "labourflow/dynamics.hpp"

#include "labourflow/errors.hpp"
#include "labourflow/state.hpp"

#include <algorithm>
#include <cmath>

namespace labourflow {

namespace {

struct MeanState {
    std::vector<double> employed;
    std::vector<double> unemployed;
    std::vector<VacancyBookReal> books;
};

struct MeanFlows {
    std::vector<double> separations;
    std::vector<double> openings;
    std::vector<double> hires_in;
    std::vector<double> hires_out;
};

// Expected hires per node. With one application per worker, a vacancy
// slot at j stays unfilled with probability Π_i (1 - P_ij / v_j)^pool_i
// where P_ij is a worker's chance of targeting j, so the expected
// number of filled slots is exact at integer pool sizes; fractional
// pools extend it continuously. Workers submitting several applications
// reuse the same expression per application, which slightly overstates
// hires when one worker wins multiple slots.
MeanFlows mean_step(MeanState& st, const MobilityNetwork& net,
                    const std::vector<double>& d_next,
                    const SimulationParams& params) {
    const std::size_t n = st.employed.size();
    MeanFlows flows;
    flows.separations.assign(n, 0.0);
    flows.openings.assign(n, 0.0);
    flows.hires_in.assign(n, 0.0);
    flows.hires_out.assign(n, 0.0);

    std::vector<double> pool(n, 0.0);
    std::vector<double> v_avail(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double e = st.employed[i];
        double v = st.books[i].total();
        double delta = e + v - d_next[i];

        double b = params.sep_rate * e;
        if (delta > 0.0) {
            b += (1.0 - params.sep_rate) * params.sep_speed * delta;
        }
        b = std::min(b, e);

        double c = params.open_rate * e;
        if (delta < 0.0) {
            c += (1.0 - params.open_rate) * params.open_speed * -delta;
        }

        flows.separations[i] = b;
        flows.openings[i] = c;
        st.employed[i] = e - b;
        pool[i] = st.unemployed[i] + b;
        st.books[i].age_and_open(c);
        v_avail[i] = v + c;
    }

    // Application mass lambda[i][j] = pool_i * apps * P_ij with
    // P_ij = A_ij v_j / Σ_k A_ik v_k, accumulated per target.
    std::vector<double> log_miss(n, 0.0);   // Σ_i pool_i·apps·ln(1 - P_ij/v_j)
    std::vector<double> lambda_to(n, 0.0);  // expected applications per target
    std::vector<bool> forced_fill(n, false);
    struct Mass {
        std::uint32_t target;
        double lambda;
    };
    std::vector<std::vector<Mass>> mass_from(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (pool[i] <= 0.0) continue;
        double denom = 0.0;
        for (std::size_t k = net.row_offsets[i]; k < net.row_offsets[i + 1];
             ++k) {
            if (v_avail[net.cols[k]] > 0.0) {
                denom += net.weights[k] * v_avail[net.cols[k]];
            }
        }
        if (denom <= 0.0) continue;
        double applicants = pool[i] * params.apps_per_worker;
        for (std::size_t k = net.row_offsets[i]; k < net.row_offsets[i + 1];
             ++k) {
            std::uint32_t j = net.cols[k];
            if (v_avail[j] <= 0.0) continue;
            double p = net.weights[k] * v_avail[j] / denom;
            if (p <= 0.0) continue;
            double lam = applicants * p;
            lambda_to[j] += lam;
            mass_from[i].push_back({j, lam});
            double per_slot = p / v_avail[j];
            if (per_slot >= 1.0) {
                forced_fill[j] = true;
            } else {
                log_miss[j] += applicants * std::log1p(-per_slot);
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        if (lambda_to[j] <= 0.0) continue;
        double fill_prob =
            forced_fill[j] ? 1.0 : -std::expm1(log_miss[j]);
        double hires = v_avail[j] * fill_prob;
        hires = std::min(hires, lambda_to[j]);
        flows.hires_in[j] = hires;
    }

    for (std::size_t i = 0; i < n; ++i) {
        double out = 0.0;
        for (const Mass& m : mass_from[i]) {
            if (lambda_to[m.target] > 0.0) {
                out += flows.hires_in[m.target] * m.lambda /
                       lambda_to[m.target];
            }
        }
        flows.hires_out[i] = out;
    }

    for (std::size_t i = 0; i < n; ++i) {
        st.employed[i] += flows.hires_in[i];
        st.unemployed[i] = pool[i] - flows.hires_out[i];
        if (st.unemployed[i] < 0.0) {
            // Only a rounding-level undershoot is legitimate with one
            // application per worker; multi-application mode may
            // overdraw the pool because offer conflicts are ignored.
            if (params.apps_per_worker == 1 &&
                st.unemployed[i] < -1e-9 * std::max(1.0, pool[i])) {
                throw InternalFault("negative expected unemployment");
            }
            st.unemployed[i] = 0.0;
        }
        remove_vacancies_proportional(st.books[i], flows.hires_in[i]);
    }
    return flows;
}

} // namespace

Trajectory meanfield_run(const MobilityNetwork& net,
                         const TargetDemand& targets,
                         const std::string& scenario,
                         const SimulationParams& params) {
    params.validate();
    if (!(net.index.nodes() == targets.index.nodes())) {
        throw InputError(
            "network and target demand describe different node sets");
    }
    const std::size_t n = net.size();
    const std::size_t s = targets.scenario_pos(scenario);
    const int total_steps = targets.total_steps();
    const int age_cap = threshold_steps(kAgeThresholdMonths[2],
                                        params.steps_per_year);

    MeanState st;
    st.employed.resize(n);
    st.unemployed.resize(n);
    st.books.assign(n, VacancyBookReal(age_cap));
    for (std::size_t i = 0; i < n; ++i) {
        double e = targets.at(s, 0, i) / params.scale;
        st.employed[i] = e;
        st.unemployed[i] = params.init_unemployment * e;
        st.books[i].reset(params.open_rate * e);
    }

    std::vector<double> d_next(n);
    auto load_target = [&](int t) {
        for (std::size_t i = 0; i < n; ++i) {
            d_next[i] = targets.at(s, t, i) / params.scale;
        }
    };

    load_target(0);
    for (int b = 0; b < params.burn_in_steps; ++b) {
        mean_step(st, net, d_next, params);
    }

    Trajectory traj;
    traj.index = net.index;
    traj.steps_per_year = params.steps_per_year;
    traj.first_year = targets.first_year;
    traj.integer_counts = false;
    traj.allocate(total_steps);
    int thr[3];
    for (int k = 0; k < 3; ++k) {
        thr[k] = threshold_steps(kAgeThresholdMonths[k], params.steps_per_year);
    }

    auto record = [&](int t, const MeanFlows* flows) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t c = traj.cell(t, i);
            traj.employed[c] = st.employed[i];
            traj.unemployed[c] = st.unemployed[i];
            traj.vacancies[c] = st.books[i].total();
            for (int k2 = 0; k2 < 3; ++k2) {
                traj.v_age_ge[k2][c] = st.books[i].at_least(thr[k2]);
            }
            if (flows) {
                traj.separations[c] = flows->separations[i];
                traj.openings[c] = flows->openings[i];
                traj.hires_in[c] = flows->hires_in[i];
                traj.hires_out[c] = flows->hires_out[i];
            }
        }
    };

    record(0, nullptr);
    for (int t = 1; t < total_steps; ++t) {
        load_target(t);
        MeanFlows flows = mean_step(st, net, d_next, params);
        record(t, &flows);
    }
    return traj;
}

} // namespace labourflow
