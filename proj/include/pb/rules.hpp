#pragma once

#include "pb/core.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace pb {

struct RuleLimits {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t branch_cap = kDefaultBranchCap;
};

using RuleFn = std::function<RuleOutcome(const Instance&, const Profile&)>;

// Looks up a rule by its command-line name: one of the eight score kinds
// ("util-card", ..., "nash-norm-cost"), "greedy", "phragmen", "mes-card" or
// "mes-cost".
std::optional<RuleFn> find_rule(std::string_view name,
                                const RuleLimits& limits = {});

std::vector<std::string> rule_names();

}  // namespace pb
