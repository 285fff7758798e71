#include "pb/proportional.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

namespace pb {
namespace {

void require_votes(const Profile& prof) {
  if (prof.empty()) {
    throw StructuralError("rule evaluation needs a nonempty profile");
  }
}

std::vector<std::vector<std::size_t>> approver_lists(const Instance& inst,
                                                     const Profile& prof) {
  std::vector<std::vector<std::size_t>> approvers(inst.size());
  for (std::size_t agent = 0; agent < prof.size(); ++agent) {
    Mask m = prof.ballots[agent].approved;
    while (m != 0) {
      approvers[static_cast<std::size_t>(std::countr_zero(m))].push_back(agent);
      m &= m - 1;
    }
  }
  return approvers;
}

using StateKey = std::pair<Mask, std::vector<Rational>>;

struct PhragmenSearch {
  const Instance& inst;
  std::vector<std::vector<std::size_t>> approvers;
  std::size_t branch_cap;
  std::size_t branches_used = 0;
  std::map<StateKey, std::set<Mask>> memo;

  // The earliest future purchase: per candidate project, balances of its
  // approvers grow at rate |approvers|, so the event is at
  // delta = (c(p) - current sum) / |approvers| from now.
  std::optional<std::pair<Rational, std::vector<std::size_t>>> next_event(
      Mask selected, const std::vector<Rational>& balance) const {
    std::optional<Rational> best;
    std::vector<std::size_t> tied;
    for (std::size_t p = 0; p < inst.size(); ++p) {
      if ((selected & mask_bit(p)) != 0 || approvers[p].empty()) {
        continue;
      }
      Rational sum(0);
      for (std::size_t agent : approvers[p]) {
        sum += balance[agent];
      }
      Rational delta = Rational(inst.projects()[p].cost) - sum;
      if (delta < 0) {
        delta = 0;
      } else {
        delta /= Rational(static_cast<std::int64_t>(approvers[p].size()));
      }
      if (!best || delta < *best) {
        best = delta;
        tied.clear();
      }
      if (delta == *best) {
        tied.push_back(p);
      }
    }
    if (!best) {
      return std::nullopt;
    }
    return std::make_pair(*best, std::move(tied));
  }

  std::set<Mask> run(Mask selected, std::vector<Rational> balance) {
    StateKey key{selected, balance};
    if (auto it = memo.find(key); it != memo.end()) {
      return it->second;
    }

    std::set<Mask> results;
    auto event = next_event(selected, balance);
    if (!event) {
      results.insert(selected);
      memo.emplace(std::move(key), results);
      return results;
    }
    const auto& [delta, tied] = *event;

    // The process stops outright if any tied project would overflow.
    const std::int64_t used = inst.cost_of(selected);
    for (std::size_t p : tied) {
      if (used + inst.projects()[p].cost > inst.budget()) {
        results.insert(selected);
        memo.emplace(std::move(key), results);
        return results;
      }
    }

    for (Rational& b : balance) {
      b += delta;
    }
    for (std::size_t p : tied) {
      if (++branches_used > branch_cap) {
        throw BranchLimitError("tie branching exceeds the cap of " +
                               std::to_string(branch_cap));
      }
      std::vector<Rational> child = balance;
      Rational paid(0);
      for (std::size_t agent : approvers[p]) {
        paid += child[agent];
        child[agent] = 0;
      }
      if (paid != Rational(inst.projects()[p].cost)) {
        throw std::logic_error("approver balances do not cover the price");
      }
      auto sub = run(selected | mask_bit(p), std::move(child));
      results.insert(sub.begin(), sub.end());
    }
    memo.emplace(std::move(key), results);
    return results;
  }
};

// Minimal threshold alpha such that the approvers can jointly pay c(p) with
// per-agent payments min(b_i, alpha * mu). Budgets must already cover c(p).
Rational minimal_affordability(std::vector<Rational> budgets,
                               const Rational& mu, std::int64_t cost) {
  std::sort(budgets.begin(), budgets.end());
  const std::size_t k = budgets.size();
  Rational prefix(0);
  for (std::size_t capped = 0; capped < k; ++capped) {
    // Segment where exactly the `capped` smallest budgets are exhausted.
    const Rational alpha =
        (Rational(cost) - prefix) /
        (Rational(static_cast<std::int64_t>(k - capped)) * mu);
    if (alpha * mu <= budgets[capped]) {
      return alpha;
    }
    prefix += budgets[capped];
  }
  throw std::logic_error("no affordability threshold despite budget cover");
}

struct MesSearch {
  const Instance& inst;
  std::vector<std::vector<std::size_t>> approvers;
  const SatisfactionFunction& mu;
  std::size_t branch_cap;
  std::size_t branches_used = 0;
  std::map<StateKey, std::set<Mask>> memo;

  std::set<Mask> run(Mask selected, std::vector<Rational> budget) {
    StateKey key{selected, budget};
    if (auto it = memo.find(key); it != memo.end()) {
      return it->second;
    }

    std::optional<Rational> best;
    std::vector<std::size_t> tied;
    for (std::size_t p = 0; p < inst.size(); ++p) {
      if ((selected & mask_bit(p)) != 0 || approvers[p].empty()) {
        continue;
      }
      Rational total(0);
      for (std::size_t agent : approvers[p]) {
        total += budget[agent];
      }
      if (total < Rational(inst.projects()[p].cost)) {
        continue;  // not affordable for any alpha
      }
      std::vector<Rational> budgets;
      budgets.reserve(approvers[p].size());
      for (std::size_t agent : approvers[p]) {
        budgets.push_back(budget[agent]);
      }
      const Rational alpha = minimal_affordability(
          std::move(budgets), mu.value(p), inst.projects()[p].cost);
      if (!best || alpha < *best) {
        best = alpha;
        tied.clear();
      }
      if (alpha == *best) {
        tied.push_back(p);
      }
    }

    std::set<Mask> results;
    if (!best) {
      results.insert(selected);
      memo.emplace(std::move(key), results);
      return results;
    }

    for (std::size_t p : tied) {
      if (++branches_used > branch_cap) {
        throw BranchLimitError("tie branching exceeds the cap of " +
                               std::to_string(branch_cap));
      }
      std::vector<Rational> child = budget;
      Rational paid(0);
      const Rational cap = *best * mu.value(p);
      for (std::size_t agent : approvers[p]) {
        const Rational payment = std::min(child[agent], cap);
        child[agent] -= payment;
        paid += payment;
      }
      if (paid != Rational(inst.projects()[p].cost)) {
        throw std::logic_error("charges do not sum to the project cost");
      }
      auto sub = run(selected | mask_bit(p), std::move(child));
      results.insert(sub.begin(), sub.end());
    }
    memo.emplace(std::move(key), results);
    return results;
  }
};

RuleOutcome collect(const Instance& inst, const std::set<Mask>& masks) {
  std::vector<BudgetAllocation> winners;
  winners.reserve(masks.size());
  for (Mask m : masks) {
    winners.emplace_back(inst, m);
  }
  return RuleOutcome(inst, std::move(winners));
}

}  // namespace

SatisfactionFunction SatisfactionFunction::card(const Instance& inst) {
  return SatisfactionFunction(Kind::Card,
                              std::vector<Rational>(inst.size(), Rational(1)));
}

SatisfactionFunction SatisfactionFunction::cost(const Instance& inst) {
  std::vector<Rational> values;
  values.reserve(inst.size());
  for (const Project& p : inst.projects()) {
    values.emplace_back(p.cost);
  }
  return SatisfactionFunction(Kind::Cost, std::move(values));
}

SatisfactionFunction SatisfactionFunction::custom(
    const Instance& inst, const std::map<std::string, Rational>& mu) {
  std::vector<Rational> values(inst.size());
  for (const auto& [id, value] : mu) {
    if (value <= 0) {
      throw StructuralError("satisfaction of '" + id + "' must be positive");
    }
    values[inst.require_index(id)] = value;
  }
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (values[i] == 0) {
      throw StructuralError("no satisfaction value for '" +
                            inst.projects()[i].id + "'");
    }
  }
  return SatisfactionFunction(Kind::Custom, std::move(values));
}

RuleOutcome sequential_phragmen(const Instance& inst, const Profile& prof,
                                std::size_t branch_cap) {
  require_votes(prof);
  PhragmenSearch search{inst, approver_lists(inst, prof), branch_cap, 0, {}};
  auto results = search.run(0, std::vector<Rational>(prof.size(), Rational(0)));
  return collect(inst, results);
}

std::optional<PhragmenEvent> phragmen_first_event(const Instance& inst,
                                                  const Profile& prof) {
  require_votes(prof);
  PhragmenSearch search{inst, approver_lists(inst, prof), 1, 0, {}};
  auto event =
      search.next_event(0, std::vector<Rational>(prof.size(), Rational(0)));
  if (!event) {
    return std::nullopt;
  }
  return PhragmenEvent{event->first, event->second};
}

RuleOutcome mes(const Instance& inst, const Profile& prof,
                const SatisfactionFunction& mu, std::size_t branch_cap) {
  require_votes(prof);
  const Rational share = make_rational(inst.budget(),
                                       static_cast<std::int64_t>(prof.size()));
  MesSearch search{inst, approver_lists(inst, prof), mu, branch_cap, 0, {}};
  auto results = search.run(0, std::vector<Rational>(prof.size(), share));
  return collect(inst, results);
}

}  // namespace pb
