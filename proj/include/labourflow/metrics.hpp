#pragma once

#include "labourflow/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace labourflow {

// Inclusive timestep range.
struct StepWindow {
    int t0 = 0;
    int t1 = 0;
};

StepWindow full_window(const Trajectory& traj);

// Per-node average unemployment rate over the window: ratio of summed
// unemployment to summed labour force, not a mean of per-step ratios.
// Nodes with an all-zero denominator come back empty.
std::vector<std::optional<double>> avg_unemployment_rate(const Trajectory& traj,
                                                         StepWindow window);

// Per-node long-open vacancy share: vacancies open at least x_months,
// summed over the window, divided by summed realised demand (v + e).
// x_months must be one of the recorded thresholds.
std::vector<std::optional<double>> avg_vacancy_rate(const Trajectory& traj,
                                                    StepWindow window,
                                                    int x_months);

struct AggregateSeries {
    std::vector<double> u_rate_per_step;
    std::vector<int> years;                    // year reached by each interval
    std::vector<double> reallocation_per_year; // summed positive employment gains
};

AggregateSeries aggregate_series(const Trajectory& traj);

struct VarianceDecomposition {
    double total = 0.0;
    double between_region = 0.0;
    double between_occupation = 0.0;
    double residual = 0.0;
    double additivity_gap = 0.0; // |components sum - total|
    std::size_t n_values = 0;
    std::string note;
};

// Two-way decomposition of the per-node variance of `values` into
// between-region, between-occupation, and residual parts. Group means
// are centred on the grand mean; variances are population (1/N)
// moments weighted by node count. On balanced panels the parts add up
// to the total; otherwise the gap is reported, not hidden.
VarianceDecomposition variance_decomposition(
    const std::vector<double>& values,
    const std::vector<std::string>& region_of,
    const std::vector<std::string>& occupation_of);

// Spearman rank correlation with average ranks on ties. Empty when
// either input has no rank variation or fewer than two points.
std::optional<double> spearman(const std::vector<double>& a,
                               const std::vector<double>& b);

} // namespace labourflow
