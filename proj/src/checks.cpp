#include "pb/checks.hpp"

#include <algorithm>

namespace pb {
namespace {

RuleFn require_rule(std::string_view name, const RuleLimits& limits) {
  auto rule = find_rule(name, limits);
  if (!rule) {
    throw StructuralError("unknown rule '" + std::string(name) + "'");
  }
  return *rule;
}

Profile repeated_ballots(
    const Instance& inst,
    const std::vector<std::pair<std::string, int>>& ballot_counts) {
  Profile prof;
  for (const auto& [id, copies] : ballot_counts) {
    const Ballot ballot = make_ballot(inst, {id});
    for (int i = 0; i < copies; ++i) {
      prof.ballots.push_back(ballot);
    }
  }
  return prof;
}

RuleOutcome outcome_of(const Instance& inst,
                       const std::vector<std::vector<std::string>>& sets) {
  std::vector<BudgetAllocation> winners;
  for (const auto& ids : sets) {
    winners.emplace_back(inst, make_ballot(inst, ids).approved);
  }
  return RuleOutcome(inst, std::move(winners));
}

}  // namespace

Instance random_instance(RandomStream& rng, const FuzzParams& params) {
  const std::size_t n_projects =
      params.max_projects <= 2
          ? params.max_projects
          : 2 + rng.next_below(params.max_projects - 1);
  std::vector<Project> projects;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n_projects; ++i) {
    const std::int64_t cost =
        params.min_cost +
        static_cast<std::int64_t>(rng.next_below(
            static_cast<std::uint64_t>(params.max_cost - params.min_cost + 1)));
    projects.push_back({"p" + std::to_string(i + 1), cost});
    total += cost;
  }
  std::int64_t budget;
  if (params.min_cost == params.max_cost) {
    // Unit-cost instance: the budget stays a multiple of the common cost.
    budget = params.min_cost *
             (1 + static_cast<std::int64_t>(rng.next_below(n_projects)));
  } else {
    budget = 1 + static_cast<std::int64_t>(
                     rng.next_below(static_cast<std::uint64_t>(total)));
  }
  return Instance(std::move(projects), budget);
}

Profile random_profile(RandomStream& rng, const Instance& inst,
                       std::size_t max_agents) {
  const std::size_t n_agents = 1 + rng.next_below(max_agents);
  Profile prof;
  for (std::size_t i = 0; i < n_agents; ++i) {
    Ballot b;
    for (std::size_t p = 0; p < inst.size(); ++p) {
      if (rng.bernoulli(1, 2)) {
        b.approved |= mask_bit(p);
      }
    }
    prof.ballots.push_back(b);
  }
  return prof;
}

ReinforcementCheck check_weak_reinforcement(std::string_view rule_name,
                                            const Instance& inst,
                                            const Profile& a, const Profile& b,
                                            const RuleLimits& limits) {
  const RuleFn rule = require_rule(rule_name, limits);
  RuleOutcome fa = rule(inst, a);
  RuleOutcome fb = rule(inst, b);
  if (!(fa == fb)) {
    return {ReinforcementStatus::NotApplicable, std::nullopt};
  }
  RuleOutcome fab = rule(inst, concat(a, b));
  if (fab == fa) {
    return {ReinforcementStatus::Pass, std::nullopt};
  }
  return {ReinforcementStatus::Violation,
          ViolationReport{std::string(rule_name), inst, a, b, std::move(fa),
                          std::move(fab)}};
}

FuzzSummary fuzz_weak_reinforcement(std::string_view rule_name,
                                    const FuzzParams& params,
                                    std::size_t trials, std::uint64_t seed,
                                    const RuleLimits& limits) {
  if (trials == 0) {
    throw std::invalid_argument("fuzzing needs at least one trial");
  }
  require_rule(rule_name, limits);

  FuzzSummary summary;
  summary.trials = trials;
  const RandomStream root(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomStream stream = root.split(trial);
    const Instance inst = random_instance(stream, params);
    const Profile a = random_profile(stream, inst, params.max_agents);
    const Profile b = random_profile(stream, inst, params.max_agents);
    const ReinforcementCheck check =
        check_weak_reinforcement(rule_name, inst, a, b, limits);
    switch (check.status) {
      case ReinforcementStatus::NotApplicable:
        break;
      case ReinforcementStatus::Pass:
        ++summary.applicable;
        ++summary.passes;
        break;
      case ReinforcementStatus::Violation:
        ++summary.applicable;
        ++summary.violations;
        if (!summary.first_violation) {
          summary.first_violation = check.report;
        }
        break;
    }
  }
  return summary;
}

MonotonicResult check_monotonic_conditions(const ScoreEvaluator& f,
                                           const Instance& inst,
                                           const Profile& a, const Profile& b,
                                           const BudgetAllocation& x,
                                           const BudgetAllocation& y) {
  const Profile ab = concat(a, b);
  const Rational fax = f(inst, a, x).value;
  const Rational fay = f(inst, a, y).value;
  const Rational fbx = f(inst, b, x).value;
  const Rational fby = f(inst, b, y).value;
  const Rational fabx = f(inst, ab, x).value;
  const Rational faby = f(inst, ab, y).value;

  if (fax < fay && fbx < fby && !(fabx < faby)) {
    return MonotonicResult::Condition1Violation;
  }
  if (fay < fax && fby < fbx && !(faby < fabx)) {
    return MonotonicResult::Condition1Violation;
  }
  if (fax == fay && fbx == fby && fabx != faby) {
    return MonotonicResult::Condition2Violation;
  }
  return MonotonicResult::Pass;
}

MonotonicResult check_monotonic_conditions(ScoreKind kind, const Instance& inst,
                                           const Profile& a, const Profile& b,
                                           const BudgetAllocation& x,
                                           const BudgetAllocation& y) {
  return check_monotonic_conditions(
      [kind](const Instance& i, const Profile& p, const BudgetAllocation& al) {
        return score(kind, i, p, al);
      },
      inst, a, b, x, y);
}

std::vector<Fixture> builtin_fixtures() {
  std::vector<Fixture> fixtures;

  {
    // Four unit-cost projects, budget 3. Both profiles elect {p1,p3,p4}, the
    // combined profile elects {p1,p2,p3}; the first combined purchase is p3
    // at time 1/7.
    Instance inst({{"p1", 1}, {"p2", 1}, {"p3", 1}, {"p4", 1}}, 3);
    Profile a1{{make_ballot(inst, {"p1"}),
                make_ballot(inst, {"p1", "p3", "p4"}),
                make_ballot(inst, {"p2", "p3", "p4"}),
                make_ballot(inst, {"p2", "p3", "p4"}),
                make_ballot(inst, {"p2", "p3", "p4"})}};
    Profile a2{{make_ballot(inst, {"p2"}),
                make_ballot(inst, {"p1", "p4"}),
                make_ballot(inst, {"p1", "p3"}),
                make_ballot(inst, {"p1", "p3"}),
                make_ballot(inst, {"p1", "p3", "p4"})}};
    RuleOutcome separate = outcome_of(inst, {{"p1", "p3", "p4"}});
    fixtures.push_back(Fixture{"phragmen-reinforcement",
                               {"phragmen"},
                               inst,
                               {a1, a2},
                               {separate, separate},
                               0,
                               1,
                               outcome_of(inst, {{"p1", "p2", "p3"}}),
                               true,
                               std::nullopt});
  }

  {
    // Two unit-cost projects, budget 2. Both profiles elect {p1,p2}; on the
    // combined profile nobody can afford a second project, so the tie
    // branches give {p1} and {p2}.
    Instance inst({{"p1", 1}, {"p2", 1}}, 2);
    Profile a1{{make_ballot(inst, {"p1"}), make_ballot(inst, {"p2"})}};
    Profile a2{{make_ballot(inst, {"p1", "p2"}),
                make_ballot(inst, {"p1", "p2"})}};
    RuleOutcome separate = outcome_of(inst, {{"p1", "p2"}});
    fixtures.push_back(Fixture{"mes-reinforcement",
                               {"mes-card", "mes-cost"},
                               inst,
                               {a1, a2},
                               {separate, separate},
                               0,
                               1,
                               outcome_of(inst, {{"p1"}, {"p2"}}),
                               true,
                               std::nullopt});
  }

  {
    // Costs (2,2,3), budget 4. Approval scores (10,1,9) and (1,10,9) both
    // give {p1,p2}; the combined scores (11,11,18) give {p3}. The profiles
    // materialise the scores with single-project ballots.
    Instance inst({{"p1", 2}, {"p2", 2}, {"p3", 3}}, 4);
    Profile a = repeated_ballots(inst, {{"p1", 10}, {"p2", 1}, {"p3", 9}});
    Profile b = repeated_ballots(inst, {{"p1", 1}, {"p2", 10}, {"p3", 9}});
    RuleOutcome separate = outcome_of(inst, {{"p1", "p2"}});
    fixtures.push_back(Fixture{"greedy-reinforcement",
                               {"greedy"},
                               inst,
                               {a, b},
                               {separate, separate},
                               0,
                               1,
                               outcome_of(inst, {{"p3"}}),
                               true,
                               std::nullopt});
  }

  {
    // Two unit-cost projects, budget 2: the four single-agent profiles whose
    // outcome sets pin both nash-card and util-card, and rule out any noise
    // model matching them on the unconstrained truth space.
    Instance inst({{"p1", 1}, {"p2", 1}}, 2);
    Profile p1{{make_ballot(inst, {"p1"})}};
    Profile p2{{make_ballot(inst, {"p2"})}};
    Profile both{{make_ballot(inst, {"p1", "p2"})}};
    Profile none{{Ballot{}}};
    fixtures.push_back(Fixture{
        "argmax-mle-refutation",
        {"nash-card", "util-card"},
        inst,
        {p1, p2, both, none},
        {outcome_of(inst, {{"p1"}, {"p1", "p2"}}),
         outcome_of(inst, {{"p2"}, {"p1", "p2"}}),
         outcome_of(inst, {{"p1", "p2"}}),
         outcome_of(inst, {{}, {"p1"}, {"p2"}, {"p1", "p2"}})},
        0,
        1,
        outcome_of(inst, {{"p1", "p2"}}),
        false,
        MleRefutation{NoiseModelKind::MApp, TruthSpace::AllFeasible, 0}});
  }

  return fixtures;
}

}  // namespace pb
