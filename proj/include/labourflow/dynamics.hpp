#pragma once

#include "labourflow/network.hpp"
#include "labourflow/params.hpp"
#include "labourflow/scenario.hpp"
#include "labourflow/trajectory.hpp"

#include <string>

namespace labourflow {

// Runs one scenario over the full horizon and returns the recorded
// trajectory. Population counts are the scenario targets divided by
// params.scale. A burn-in phase under constant first-year demand runs
// before recording starts, so step 0 is the post-burn-in state.
//
// Worker flow per step: spontaneous and demand-gap separations and
// vacancy openings, network-weighted applications from the unemployed
// pool (just-separated workers included), per-vacancy uniform matching,
// then bookkeeping. Filled vacancies leave the age ledger uniformly at
// random; survivors age one step.
Trajectory simulate_run(const MobilityNetwork& net, const TargetDemand& targets,
                        const std::string& scenario,
                        const SimulationParams& params);

Trajectory stochastic_run(const MobilityNetwork& net,
                          const TargetDemand& targets,
                          const std::string& scenario,
                          const SimulationParams& params);

// Deterministic evolution of expected counts under the same flow
// structure; applications and matching enter through their exact
// per-step expectations (for one application per worker) evaluated at
// the current mean state.
Trajectory meanfield_run(const MobilityNetwork& net,
                         const TargetDemand& targets,
                         const std::string& scenario,
                         const SimulationParams& params);

} // namespace labourflow
