#include "pb/rules.hpp"

#include "pb/proportional.hpp"
#include "pb/welfare.hpp"

namespace pb {

std::optional<RuleFn> find_rule(std::string_view name,
                                const RuleLimits& limits) {
  if (auto kind = parse_score_kind(name)) {
    return RuleFn([kind = *kind, cap = limits.enumeration_cap](
                      const Instance& inst, const Profile& prof) {
      return argmax_rule(kind, inst, prof, cap);
    });
  }
  if (name == "greedy") {
    return RuleFn([cap = limits.branch_cap](const Instance& inst,
                                            const Profile& prof) {
      return greedy_cost_approval(inst, prof, cap);
    });
  }
  if (name == "phragmen") {
    return RuleFn([cap = limits.branch_cap](const Instance& inst,
                                            const Profile& prof) {
      return sequential_phragmen(inst, prof, cap);
    });
  }
  if (name == "mes-card") {
    return RuleFn([cap = limits.branch_cap](const Instance& inst,
                                            const Profile& prof) {
      return mes(inst, prof, SatisfactionFunction::card(inst), cap);
    });
  }
  if (name == "mes-cost") {
    return RuleFn([cap = limits.branch_cap](const Instance& inst,
                                            const Profile& prof) {
      return mes(inst, prof, SatisfactionFunction::cost(inst), cap);
    });
  }
  return std::nullopt;
}

std::vector<std::string> rule_names() {
  std::vector<std::string> names;
  for (ScoreKind kind : kAllScoreKinds) {
    names.emplace_back(to_string(kind));
  }
  names.emplace_back("greedy");
  names.emplace_back("phragmen");
  names.emplace_back("mes-card");
  names.emplace_back("mes-cost");
  return names;
}

}  // namespace pb
