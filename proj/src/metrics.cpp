#include "labourflow/metrics.hpp"

#include "labourflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace labourflow {

StepWindow full_window(const Trajectory& traj) {
    return {0, traj.n_steps - 1};
}

namespace {

void check_window(const Trajectory& traj, StepWindow w) {
    if (w.t0 < 0 || w.t1 >= traj.n_steps || w.t0 > w.t1) {
        throw InputError("metric window outside the recorded trajectory");
    }
}

} // namespace

std::vector<std::optional<double>> avg_unemployment_rate(const Trajectory& traj,
                                                         StepWindow window) {
    check_window(traj, window);
    const std::size_t n = traj.index.size();
    std::vector<std::optional<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double num = 0.0, den = 0.0;
        for (int t = window.t0; t <= window.t1; ++t) {
            num += traj.u(t, i);
            den += traj.u(t, i) + traj.e(t, i);
        }
        if (den > 0.0) out[i] = num / den;
    }
    return out;
}

std::vector<std::optional<double>> avg_vacancy_rate(const Trajectory& traj,
                                                    StepWindow window,
                                                    int x_months) {
    check_window(traj, window);
    int which = -1;
    for (int k = 0; k < 3; ++k) {
        if (kAgeThresholdMonths[k] == x_months) which = k;
    }
    if (which < 0) {
        throw InputError("vacancy-age threshold " + std::to_string(x_months) +
                         " months is not recorded (choices: 3, 6, 12)");
    }
    const std::size_t n = traj.index.size();
    std::vector<std::optional<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double num = 0.0, den = 0.0;
        for (int t = window.t0; t <= window.t1; ++t) {
            num += traj.v_age_ge[which][traj.cell(t, i)];
            den += traj.v(t, i) + traj.e(t, i);
        }
        if (den > 0.0) out[i] = num / den;
    }
    return out;
}

AggregateSeries aggregate_series(const Trajectory& traj) {
    const std::size_t n = traj.index.size();
    AggregateSeries out;
    out.u_rate_per_step.reserve(static_cast<std::size_t>(traj.n_steps));
    for (int t = 0; t < traj.n_steps; ++t) {
        double u = 0.0, labour = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u += traj.u(t, i);
            labour += traj.u(t, i) + traj.e(t, i);
        }
        out.u_rate_per_step.push_back(labour > 0.0 ? u / labour : 0.0);
    }
    const int s = traj.steps_per_year;
    for (int anchor = 0; anchor + s < traj.n_steps; anchor += s) {
        double gains = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double diff = traj.e(anchor + s, i) - traj.e(anchor, i);
            if (diff > 0.0) gains += diff;
        }
        out.years.push_back(traj.first_year + anchor / s + 1);
        out.reallocation_per_year.push_back(gains);
    }
    return out;
}

VarianceDecomposition variance_decomposition(
    const std::vector<double>& values,
    const std::vector<std::string>& region_of,
    const std::vector<std::string>& occupation_of) {
    const std::size_t n = values.size();
    if (region_of.size() != n || occupation_of.size() != n) {
        throw InputError("decomposition labels do not cover all values");
    }
    VarianceDecomposition out;
    out.n_values = n;
    if (n == 0) return out;

    double grand = std::accumulate(values.begin(), values.end(), 0.0) /
                   static_cast<double>(n);
    std::map<std::string, std::pair<double, std::size_t>> region_acc, occ_acc;
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = region_acc[region_of[i]];
        r.first += values[i];
        r.second += 1;
        auto& o = occ_acc[occupation_of[i]];
        o.first += values[i];
        o.second += 1;
    }
    std::map<std::string, double> region_mean, occ_mean;
    for (const auto& [key, acc] : region_acc) {
        region_mean[key] = acc.first / static_cast<double>(acc.second);
    }
    for (const auto& [key, acc] : occ_acc) {
        occ_mean[key] = acc.first / static_cast<double>(acc.second);
    }

    for (std::size_t i = 0; i < n; ++i) {
        double dev = values[i] - grand;
        double r = region_mean[region_of[i]] - grand;
        double o = occ_mean[occupation_of[i]] - grand;
        double resid = values[i] - region_mean[region_of[i]] -
                       occ_mean[occupation_of[i]] + grand;
        out.total += dev * dev;
        out.between_region += r * r;
        out.between_occupation += o * o;
        out.residual += resid * resid;
    }
    out.total /= static_cast<double>(n);
    out.between_region /= static_cast<double>(n);
    out.between_occupation /= static_cast<double>(n);
    out.residual /= static_cast<double>(n);
    out.additivity_gap = std::abs(out.between_region + out.between_occupation +
                                  out.residual - out.total);
    if (region_acc.size() == 1) {
        out.note = "single region: between-region component is structurally 0";
    } else if (occ_acc.size() == 1) {
        out.note =
            "single occupation: between-occupation component is structurally 0";
    }
    return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t k = 0;
    while (k < n) {
        std::size_t end = k;
        while (end < n && v[order[end]] == v[order[k]]) ++end;
        double rank = (static_cast<double>(k) + static_cast<double>(end - 1)) /
                          2.0 +
                      1.0;
        for (std::size_t j = k; j < end; ++j) ranks[order[j]] = rank;
        k = end;
    }
    return ranks;
}

} // namespace

std::optional<double> spearman(const std::vector<double>& a,
                               const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw InputError("rank correlation needs equal-length inputs");
    }
    const std::size_t n = a.size();
    if (n < 2) return std::nullopt;
    std::vector<double> ra = average_ranks(a);
    std::vector<double> rb = average_ranks(b);
    double ma = std::accumulate(ra.begin(), ra.end(), 0.0) /
                static_cast<double>(n);
    double mb = std::accumulate(rb.begin(), rb.end(), 0.0) /
                static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = ra[i] - ma;
        double db = rb[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

} // namespace labourflow
