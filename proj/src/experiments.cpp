#include "pb/experiments.hpp"

#include <sstream>

namespace pb {

std::vector<RecoveryRow> run_recovery(const Instance& inst,
                                      const ExperimentConfig& cfg) {
  if (cfg.trials < 1) {
    throw std::invalid_argument("experiments need at least one trial");
  }
  if (cfg.rules.empty() || cfg.agent_grid.empty()) {
    throw std::invalid_argument("experiments need rules and an agent grid");
  }
  for (std::size_t n : cfg.agent_grid) {
    if (n == 0) {
      throw std::invalid_argument("agent counts must be positive");
    }
  }
  const BudgetAllocation truth(inst, cfg.truth_mask);
  if (truth_degenerate(cfg.model, inst, GroundTruth{truth})) {
    throw DegenerateTruthError(
        "the planted ground truth is degenerate for this model");
  }
  for (const std::string& name : cfg.rules) {
    if (name != "mle" && !find_rule(name, cfg.limits)) {
      throw StructuralError("unknown rule '" + name + "'");
    }
  }

  const RandomStream root(cfg.root_seed);
  std::vector<RecoveryRow> rows;
  for (const std::string& name : cfg.rules) {
    for (std::size_t n : cfg.agent_grid) {
      RecoveryRow row{name, n, cfg.trials, 0, 0, 0};
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        // Profiles depend only on (n, trial, agent), so every rule sees the
        // same sampled electorate.
        Profile prof;
        prof.ballots.reserve(n);
        for (std::size_t agent = 0; agent < n; ++agent) {
          RandomStream stream = root.split(n).split(trial).split(agent);
          prof.ballots.push_back(
              sample_ballot(cfg.model, inst, GroundTruth{truth}, stream));
        }
        RuleOutcome outcome =
            name == "mle"
                ? mle(cfg.model, inst, prof, cfg.space,
                      cfg.limits.enumeration_cap)
                : (*find_rule(name, cfg.limits))(inst, prof);
        if (outcome.contains(truth)) {
          ++row.hits;
          if (outcome.size() == 1) {
            ++row.exact;
          }
        }
        row.winners_total += outcome.size();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string emit_csv(const std::vector<RecoveryRow>& rows) {
  std::ostringstream out;
  out << "rule,n_agents,exact_recovery,hit_rate,mean_winners\n";
  for (const RecoveryRow& row : rows) {
    const auto trials = static_cast<std::int64_t>(row.trials);
    out << row.rule << ',' << row.n_agents << ','
        << to_decimal_string(
               make_rational(static_cast<std::int64_t>(row.exact), trials))
        << ','
        << to_decimal_string(
               make_rational(static_cast<std::int64_t>(row.hits), trials))
        << ','
        << to_decimal_string(make_rational(
               static_cast<std::int64_t>(row.winners_total), trials))
        << '\n';
  }
  return out.str();
}

}  // namespace pb
