#pragma once

#include "labourflow/nodes.hpp"

#include <string>
#include <vector>

namespace labourflow {

// Vacancy-age reporting thresholds, in months.
inline constexpr int kAgeThresholdMonths[3] = {3, 6, 12};

// Converts a month threshold to timesteps, rounding up when the months
// do not fall on a step boundary; *exact reports whether they did.
int threshold_steps(int months, int steps_per_year, bool* exact = nullptr);

// Per-node time series of one simulation run. Values are expected
// counts in mean-field mode and realized integers in stochastic mode.
struct Trajectory {
    NodeIndex index;
    int steps_per_year = 12;
    int first_year = 2018;
    int n_steps = 0;
    bool integer_counts = true;

    // value at (t, node) lives at t * N + node
    std::vector<double> employed;
    std::vector<double> unemployed;
    std::vector<double> vacancies;
    std::vector<double> v_age_ge[3]; // per threshold in kAgeThresholdMonths

    // Per-step flows, kept in memory for diagnostics; not serialized.
    std::vector<double> separations;
    std::vector<double> openings;
    std::vector<double> hires_in;
    std::vector<double> hires_out;

    std::size_t cell(int t, std::size_t i) const {
        return static_cast<std::size_t>(t) * index.size() + i;
    }
    double e(int t, std::size_t i) const { return employed[cell(t, i)]; }
    double u(int t, std::size_t i) const { return unemployed[cell(t, i)]; }
    double v(int t, std::size_t i) const { return vacancies[cell(t, i)]; }

    void allocate(int steps);
    std::string to_csv() const;
};

Trajectory trajectory_from_csv(const std::string& path, int steps_per_year,
                               int first_year);

} // namespace labourflow
