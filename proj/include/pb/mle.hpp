#pragma once

#include "pb/core.hpp"
#include "pb/noise.hpp"
#include "pb/rules.hpp"

#include <optional>
#include <string_view>

namespace pb {

enum class TruthSpace { AllFeasible, ExhaustiveOnly, NondegenerateOnly };

std::string_view to_string(TruthSpace space);
std::optional<TruthSpace> parse_truth_space(std::string_view name);

// Candidate ground truths for the given model; NondegenerateOnly drops the
// allocations on which the model's distribution is undefined.
std::vector<BudgetAllocation> truth_space(
    NoiseModelKind kind, const Instance& inst, TruthSpace space,
    std::size_t cap = kDefaultEnumerationCap);

// Brute-force maximum likelihood estimation: every candidate truth keeps its
// exact likelihood and all maximisers are returned. If every candidate has
// likelihood zero the whole space ties.
RuleOutcome mle(NoiseModelKind kind, const Instance& inst, const Profile& prof,
                TruthSpace space = TruthSpace::AllFeasible,
                std::size_t cap = kDefaultEnumerationCap);

struct MleDiscrepancy {
  BudgetAllocation allocation;
  bool in_mle = false;
  bool in_rule = false;
  Rational likelihood_value;
  std::optional<Rational> rule_score;  // present for the welfare kinds
};

struct MleComparison {
  bool equal = false;
  RuleOutcome mle_outcome;
  RuleOutcome rule_outcome;
  std::vector<MleDiscrepancy> discrepancies;  // symmetric difference
};

MleComparison mle_matches_rule(NoiseModelKind kind, std::string_view rule_name,
                               const Instance& inst, const Profile& prof,
                               TruthSpace space = TruthSpace::AllFeasible,
                               const RuleLimits& limits = {});

}  // namespace pb
