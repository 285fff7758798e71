#pragma once

#include "pb/core.hpp"

#include <map>
#include <optional>

namespace pb {

// Positive per-project satisfaction weights for MES.
class SatisfactionFunction {
 public:
  enum class Kind { Card, Cost, Custom };

  static SatisfactionFunction card(const Instance& inst);
  static SatisfactionFunction cost(const Instance& inst);
  static SatisfactionFunction custom(const Instance& inst,
                                     const std::map<std::string, Rational>& mu);

  Kind kind() const { return kind_; }
  const Rational& value(std::size_t project_index) const {
    return values_[project_index];
  }

 private:
  SatisfactionFunction(Kind kind, std::vector<Rational> values)
      : kind_(kind), values_(std::move(values)) {}

  Kind kind_;
  std::vector<Rational> values_;
};

struct PhragmenEvent {
  Rational time;
  std::vector<std::size_t> tied_projects;
};

// Continuous virtual-money process, realised as an exact discrete-event
// simulation: per unbought project the purchase time has a closed form, the
// earliest event fires, ties branch, and a branch stops as soon as any tied
// project would overflow the remaining budget.
RuleOutcome sequential_phragmen(const Instance& inst, const Profile& prof,
                                std::size_t branch_cap = kDefaultBranchCap);

// Time and tied project set of the first purchase event, if any project is
// approved by at least one agent.
std::optional<PhragmenEvent> phragmen_first_event(const Instance& inst,
                                                  const Profile& prof);

// Method of Equal Shares: every agent starts with budget b/n; each round
// selects a project minimising the exact price-per-satisfaction threshold,
// branching over ties, until nothing is affordable.
RuleOutcome mes(const Instance& inst, const Profile& prof,
                const SatisfactionFunction& mu,
                std::size_t branch_cap = kDefaultBranchCap);

}  // namespace pb
