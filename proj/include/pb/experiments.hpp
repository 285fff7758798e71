#pragma once

#include "pb/mle.hpp"
#include "pb/noise.hpp"
#include "pb/rules.hpp"

#include <string>
#include <vector>

namespace pb {

// Truth-recovery run: plant a ground truth, sample i.i.d. profiles from the
// noise model over a grid of agent counts, evaluate each rule (or the
// pseudo-rule "mle", the estimator matching the configured model/space) and
// count recoveries. One stream per (agent count, trial, agent) makes the run
// reproducible and safe to parallelise.
struct ExperimentConfig {
  NoiseModelKind model = NoiseModelKind::MApp;
  Mask truth_mask = 0;
  std::vector<std::string> rules;
  std::vector<std::size_t> agent_grid;
  std::size_t trials = 1;
  std::uint64_t root_seed = 0;
  TruthSpace space = TruthSpace::AllFeasible;
  RuleLimits limits;
};

struct RecoveryRow {
  std::string rule;
  std::size_t n_agents = 0;
  std::size_t trials = 0;
  std::size_t exact = 0;          // winner set == {truth}
  std::size_t hits = 0;           // truth is among the winners
  std::size_t winners_total = 0;  // summed winner-set sizes
};

std::vector<RecoveryRow> run_recovery(const Instance& inst,
                                      const ExperimentConfig& cfg);

// Header rule,n_agents,exact_recovery,hit_rate,mean_winners; rates are exact
// decimal fractions of the trial count; row order follows the config.
std::string emit_csv(const std::vector<RecoveryRow>& rows);

}  // namespace pb
