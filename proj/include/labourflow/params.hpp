#pragma once

#include <cstdint>
#include <string>

namespace labourflow {

enum class SimMode { Stochastic, MeanField };

const char* sim_mode_name(SimMode m);
SimMode sim_mode_from_name(const std::string& s);

struct SimulationParams {
    double sep_rate = 0.009;   // per-step spontaneous separation probability
    double open_rate = 0.009;  // per-step spontaneous vacancy-opening probability
    double sep_speed = 0.1;    // demand-gap response of separations
    double open_speed = 0.1;   // demand-gap response of openings
    int steps_per_year = 12;
    double scale = 1.0;        // population divisor
    std::uint64_t seed = 1;
    SimMode mode = SimMode::Stochastic;
    int apps_per_worker = 1;
    int burn_in_steps = 24;
    double init_unemployment = 0.05; // share of employment, at initialization

    void validate() const; // throws InputError on out-of-range values
};

} // namespace labourflow
