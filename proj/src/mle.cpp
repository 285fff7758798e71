#include "pb/mle.hpp"

#include "pb/welfare.hpp"

#include <algorithm>

namespace pb {

std::string_view to_string(TruthSpace space) {
  switch (space) {
    case TruthSpace::AllFeasible:
      return "all";
    case TruthSpace::ExhaustiveOnly:
      return "exhaustive";
    case TruthSpace::NondegenerateOnly:
      return "nondegenerate";
  }
  return "?";
}

std::optional<TruthSpace> parse_truth_space(std::string_view name) {
  if (name == "all") {
    return TruthSpace::AllFeasible;
  }
  if (name == "exhaustive") {
    return TruthSpace::ExhaustiveOnly;
  }
  if (name == "nondegenerate") {
    return TruthSpace::NondegenerateOnly;
  }
  return std::nullopt;
}

std::vector<BudgetAllocation> truth_space(NoiseModelKind kind,
                                          const Instance& inst,
                                          TruthSpace space, std::size_t cap) {
  std::vector<BudgetAllocation> candidates =
      enumerate_allocations(inst, space == TruthSpace::ExhaustiveOnly, cap);
  if (space == TruthSpace::NondegenerateOnly) {
    std::erase_if(candidates, [&](const BudgetAllocation& a) {
      return truth_degenerate(kind, inst, GroundTruth{a});
    });
  }
  if (candidates.empty()) {
    throw EmptyTruthSpaceError("the ground-truth space is empty");
  }
  return candidates;
}

RuleOutcome mle(NoiseModelKind kind, const Instance& inst, const Profile& prof,
                TruthSpace space, std::size_t cap) {
  std::vector<BudgetAllocation> winners;
  Rational best(-1);
  for (const BudgetAllocation& candidate : truth_space(kind, inst, space, cap)) {
    const Rational value = likelihood(kind, inst, GroundTruth{candidate}, prof);
    if (value > best) {
      best = value;
      winners.clear();
    }
    if (value == best) {
      winners.push_back(candidate);
    }
  }
  return RuleOutcome(inst, std::move(winners));
}

MleComparison mle_matches_rule(NoiseModelKind kind, std::string_view rule_name,
                               const Instance& inst, const Profile& prof,
                               TruthSpace space, const RuleLimits& limits) {
  auto rule = find_rule(rule_name, limits);
  if (!rule) {
    throw StructuralError("unknown rule '" + std::string(rule_name) + "'");
  }
  RuleOutcome mle_outcome = mle(kind, inst, prof, space, limits.enumeration_cap);
  RuleOutcome rule_outcome = (*rule)(inst, prof);

  const std::optional<ScoreKind> score_kind = parse_score_kind(rule_name);
  std::vector<MleDiscrepancy> discrepancies;
  auto record = [&](const BudgetAllocation& alloc) {
    const bool in_mle = mle_outcome.contains(alloc);
    const bool in_rule = rule_outcome.contains(alloc);
    if (in_mle == in_rule) {
      return;
    }
    MleDiscrepancy d{alloc, in_mle, in_rule,
                     likelihood(kind, inst, GroundTruth{alloc}, prof),
                     std::nullopt};
    if (score_kind) {
      d.rule_score = score(*score_kind, inst, prof, alloc).value;
    }
    discrepancies.push_back(std::move(d));
  };
  for (const BudgetAllocation& alloc : mle_outcome.winners()) {
    record(alloc);
  }
  for (const BudgetAllocation& alloc : rule_outcome.winners()) {
    record(alloc);
  }

  const bool equal = discrepancies.empty() &&
                     mle_outcome.size() == rule_outcome.size();
  return MleComparison{equal, std::move(mle_outcome), std::move(rule_outcome),
                       std::move(discrepancies)};
}

}  // namespace pb
