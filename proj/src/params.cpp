#include "labourflow/params.hpp"

#include "labourflow/errors.hpp"

namespace labourflow {

const char* sim_mode_name(SimMode m) {
    return m == SimMode::Stochastic ? "stochastic" : "meanfield";
}

SimMode sim_mode_from_name(const std::string& s) {
    if (s == "stochastic") return SimMode::Stochastic;
    if (s == "meanfield") return SimMode::MeanField;
    throw InputError("unknown mode \"" + s + "\"");
}

void SimulationParams::validate() const {
    auto check_prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InputError(std::string(name) + " must lie in [0,1]");
        }
    };
    check_prob(sep_rate, "sep-rate");
    check_prob(open_rate, "open-rate");
    check_prob(init_unemployment, "init-unemployment");
    if (sep_speed < 0.0 || open_speed < 0.0) {
        throw InputError("adjustment speeds must be >= 0");
    }
    if (steps_per_year < 1) throw InputError("steps-per-year must be >= 1");
    if (scale < 1.0) throw InputError("scale must be >= 1");
    if (apps_per_worker < 1) throw InputError("apps-per-worker must be >= 1");
    if (burn_in_steps < 0) throw InputError("burn-in must be >= 0");
}

} // namespace labourflow
