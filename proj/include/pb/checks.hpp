#pragma once

#include "pb/mle.hpp"
#include "pb/rules.hpp"
#include "pb/welfare.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pb {

struct FuzzParams {
  std::size_t max_projects = 4;  // instances use 2..max_projects projects
  std::size_t max_agents = 6;    // each profile has 1..max_agents ballots
  std::int64_t min_cost = 1;
  std::int64_t max_cost = 1;
};

Instance random_instance(RandomStream& rng, const FuzzParams& params);
Profile random_profile(RandomStream& rng, const Instance& inst,
                       std::size_t max_agents);

enum class ReinforcementStatus { Pass, NotApplicable, Violation };

// Self-contained witness: F(A) = F(A') (= outcome_a) but F(A ++ A') differs.
struct ViolationReport {
  std::string rule;
  Instance instance;
  Profile profile_a;
  Profile profile_b;
  RuleOutcome outcome_a;
  RuleOutcome outcome_ab;
};

struct ReinforcementCheck {
  ReinforcementStatus status;
  std::optional<ViolationReport> report;
};

// NotApplicable when F(A) != F(A') (the implication is vacuous), otherwise
// Pass or a Violation with the full witness.
ReinforcementCheck check_weak_reinforcement(std::string_view rule_name,
                                            const Instance& inst,
                                            const Profile& a, const Profile& b,
                                            const RuleLimits& limits = {});

struct FuzzSummary {
  std::size_t trials = 0;
  std::size_t applicable = 0;  // trials where F(A) == F(A')
  std::size_t passes = 0;
  std::size_t violations = 0;
  std::optional<ViolationReport> first_violation;
};

// Deterministic randomized search for weak-reinforcement violations: per
// trial one random instance and two random profiles.
FuzzSummary fuzz_weak_reinforcement(std::string_view rule_name,
                                    const FuzzParams& params,
                                    std::size_t trials, std::uint64_t seed,
                                    const RuleLimits& limits = {});

using ScoreEvaluator = std::function<Score(const Instance&, const Profile&,
                                           const BudgetAllocation&)>;

enum class MonotonicResult { Pass, Condition1Violation, Condition2Violation };

// Evaluates the two conditions defining a monotonic argmax score on one
// quadruple (two profiles, two allocations), in both orientations.
MonotonicResult check_monotonic_conditions(const ScoreEvaluator& f,
                                           const Instance& inst,
                                           const Profile& a, const Profile& b,
                                           const BudgetAllocation& x,
                                           const BudgetAllocation& y);
MonotonicResult check_monotonic_conditions(ScoreKind kind, const Instance& inst,
                                           const Profile& a, const Profile& b,
                                           const BudgetAllocation& x,
                                           const BudgetAllocation& y);

// A rule refuted by way of an MLE discrepancy rather than a reinforcement
// violation: the named model/space disagrees with the rule on one profile.
struct MleRefutation {
  NoiseModelKind model;
  TruthSpace space;
  std::size_t profile_index;
};

// One executable counterexample: an instance, at least two profiles with
// their expected outcomes under the named rules, and the expected outcome of
// concatenating profiles[concat_left] ++ profiles[concat_right].
struct Fixture {
  std::string name;
  std::vector<std::string> rules;
  Instance instance;
  std::vector<Profile> profiles;
  std::vector<RuleOutcome> expected;
  std::size_t concat_left = 0;
  std::size_t concat_right = 1;
  RuleOutcome expected_concat;
  bool expects_reinforcement_violation = false;
  std::optional<MleRefutation> mle_refutation;
};

// The four proof fixtures, with exact expected outcome sets.
std::vector<Fixture> builtin_fixtures();

}  // namespace pb
