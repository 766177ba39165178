#include "commands.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/dynamics.hpp"
#include "labourflow/errors.hpp"
#include "labourflow/jsonio.hpp"
#include "labourflow/metrics.hpp"
#include "labourflow/network.hpp"
#include "labourflow/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace labourflow::cli {

namespace {

// Aggregate unemployment rate averaged over the final year of a
// deterministic baseline run.
double final_year_rate(const MobilityNetwork& net, const TargetDemand& targets,
                       SimulationParams params) {
    params.mode = SimMode::MeanField;
    Trajectory traj =
        simulate_run(net, targets, kBaselineScenario, params);
    AggregateSeries agg = aggregate_series(traj);
    const auto& series = agg.u_rate_per_step;
    std::size_t from = series.size() > static_cast<std::size_t>(
                                            params.steps_per_year)
                           ? series.size() - static_cast<std::size_t>(
                                                 params.steps_per_year)
                           : 0;
    double sum = 0.0;
    for (std::size_t t = from; t < series.size(); ++t) sum += series[t];
    return sum / static_cast<double>(series.size() - from);
}

} // namespace

void cmd_calibrate(const CalibrateOpts& opts) {
    NodesSidecar sidecar = load_nodes_sidecar(opts.nodes_json);
    MobilityNetwork net = network_from_edge_csv(
        opts.network_csv, sidecar.index, sidecar.normalization);
    TargetDemand targets = target_demand_from_csv(
        opts.targets_csv, opts.params.steps_per_year, opts.first_year);
    if (!(net.index.nodes() == targets.index.nodes())) {
        throw InputError("network and target demand node sets differ");
    }
    if (!(opts.target_rate > 0.0 && opts.target_rate < 1.0)) {
        throw InputError("target unemployment rate must be in (0, 1)");
    }
    if (opts.tolerance <= 0.0) {
        throw InputError("calibration tolerance must be positive");
    }

    // Separation and opening rates move together, keeping the ratio
    // from the starting parameters; the response speeds stay fixed.
    double ratio = opts.params.sep_rate > 0.0
                       ? opts.params.open_rate / opts.params.sep_rate
                       : 1.0;
    auto eval = [&](double sep) {
        SimulationParams p = opts.params;
        p.sep_rate = sep;
        p.open_rate = std::min(0.999, sep * ratio);
        p.validate();
        return final_year_rate(net, targets, p);
    };

    double lo = 1e-7, hi = 0.5;
    double f_lo = eval(lo);
    double f_hi = eval(hi);
    if (opts.target_rate < f_lo || opts.target_rate > f_hi) {
        throw ConstraintError(
            "target unemployment rate " + fmt_double(opts.target_rate) +
            " is outside the reachable range [" + fmt_double(f_lo) + ", " +
            fmt_double(f_hi) + "]");
    }

    double mid = lo, achieved = f_lo;
    int iterations = 0;
    bool converged = false;
    for (; iterations < opts.max_iterations; ) {
        mid = 0.5 * (lo + hi);
        achieved = eval(mid);
        ++iterations;
        if (std::abs(achieved - opts.target_rate) <= opts.tolerance) {
            converged = true;
            break;
        }
        if (achieved < opts.target_rate) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    SimulationParams fitted = opts.params;
    fitted.sep_rate = mid;
    fitted.open_rate = std::min(0.999, mid * ratio);
    write_text_file(opts.out_file,
                    calibration_json(fitted, opts.target_rate, achieved,
                                     iterations, converged));
}

} // namespace labourflow::cli
