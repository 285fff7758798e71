#include "pb/welfare.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace pb {
namespace {

int intersection_size(Mask a, Mask b) { return std::popcount(a & b); }

void require_votes(const Profile& prof) {
  if (prof.empty()) {
    throw StructuralError("rule evaluation needs a nonempty profile");
  }
}

}  // namespace

std::string_view to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::UtilCard:
      return "util-card";
    case ScoreKind::UtilCost:
      return "util-cost";
    case ScoreKind::UtilNormCard:
      return "util-norm-card";
    case ScoreKind::UtilNormCost:
      return "util-norm-cost";
    case ScoreKind::NashCard:
      return "nash-card";
    case ScoreKind::NashCost:
      return "nash-cost";
    case ScoreKind::NashNormCard:
      return "nash-norm-card";
    case ScoreKind::NashNormCost:
      return "nash-norm-cost";
  }
  return "?";
}

std::optional<ScoreKind> parse_score_kind(std::string_view name) {
  for (ScoreKind kind : kAllScoreKinds) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

Score score(ScoreKind kind, const Instance& inst, const Profile& prof,
            const BudgetAllocation& alloc) {
  const Mask pi = alloc.mask();
  const bool nash = kind == ScoreKind::NashCard || kind == ScoreKind::NashCost ||
                    kind == ScoreKind::NashNormCard ||
                    kind == ScoreKind::NashNormCost;
  const bool norm = kind == ScoreKind::UtilNormCard ||
                    kind == ScoreKind::UtilNormCost ||
                    kind == ScoreKind::NashNormCard ||
                    kind == ScoreKind::NashNormCost;
  const bool cost_based =
      kind == ScoreKind::UtilCost || kind == ScoreKind::UtilNormCost ||
      kind == ScoreKind::NashCost || kind == ScoreKind::NashNormCost;

  if (norm && pi == 0) {
    return {Rational(0), true};
  }

  const std::int64_t denom =
      norm ? (cost_based ? inst.cost_of(pi) : std::popcount(pi)) : 1;

  Rational acc = nash ? Rational(1) : Rational(0);
  for (const Ballot& ballot : prof.ballots) {
    const std::int64_t raw =
        cost_based ? inst.cost_of(ballot.approved & pi)
                   : intersection_size(ballot.approved, pi);
    if (nash && raw == 0) {
      return {Rational(0), true};
    }
    const Rational term = norm ? make_rational(raw, denom) : Rational(raw);
    if (nash) {
      acc *= term;
    } else {
      acc += term;
    }
  }
  return {acc, false};
}

RuleOutcome argmax_rule(ScoreKind kind, const Instance& inst,
                        const Profile& prof, std::size_t enumeration_cap) {
  require_votes(prof);
  std::vector<BudgetAllocation> winners;
  Rational best;
  bool have_best = false;
  for (const BudgetAllocation& alloc :
       enumerate_allocations(inst, false, enumeration_cap)) {
    const Rational value = score(kind, inst, prof, alloc).value;
    if (!have_best || value > best) {
      best = value;
      have_best = true;
      winners.clear();
    }
    if (value == best) {
      winners.push_back(alloc);
    }
  }
  return RuleOutcome(inst, std::move(winners));
}

std::vector<std::int64_t> approval_counts(const Instance& inst,
                                          const Profile& prof) {
  std::vector<std::int64_t> counts(inst.size(), 0);
  for (const Ballot& ballot : prof.ballots) {
    Mask m = ballot.approved;
    while (m != 0) {
      counts[static_cast<std::size_t>(std::countr_zero(m))] += 1;
      m &= m - 1;
    }
  }
  return counts;
}

std::int64_t approval_score(const Instance& inst, const Profile& prof,
                            std::string_view project_id) {
  const std::size_t index = inst.require_index(project_id);
  std::int64_t count = 0;
  for (const Ballot& ballot : prof.ballots) {
    if ((ballot.approved & mask_bit(index)) != 0) {
      ++count;
    }
  }
  return count;
}

RuleOutcome greedy_cost_approval(const Instance& inst, const Profile& prof,
                                 std::size_t branch_cap) {
  require_votes(prof);
  const std::vector<std::int64_t> counts = approval_counts(inst, prof);

  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) {
      return counts[a] > counts[b];
    }
    return a < b;
  });

  // Equal-score groups, listed from the highest score down. Every strict
  // ranking consistent with the scores permutes projects within each group.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || counts[order[i]] != counts[order[i - 1]]) {
      groups.emplace_back();
    }
    groups.back().push_back(order[i]);
  }

  std::size_t branches = 1;
  for (const auto& g : groups) {
    for (std::size_t f = 2; f <= g.size(); ++f) {
      branches *= f;
      if (branches > branch_cap) {
        throw BranchLimitError("greedy tie branching exceeds the cap of " +
                               std::to_string(branch_cap));
      }
    }
  }

  std::set<Mask> outcomes;
  for (;;) {
    Mask selected = 0;
    std::int64_t used = 0;
    for (const auto& g : groups) {
      for (std::size_t idx : g) {
        const std::int64_t c = inst.projects()[idx].cost;
        if (used + c <= inst.budget()) {
          selected |= mask_bit(idx);
          used += c;
        }
      }
    }
    outcomes.insert(selected);

    // Odometer over per-group permutations.
    std::size_t gi = 0;
    while (gi < groups.size() &&
           !std::next_permutation(groups[gi].begin(), groups[gi].end())) {
      ++gi;
    }
    if (gi == groups.size()) {
      break;
    }
  }

  std::vector<BudgetAllocation> winners;
  winners.reserve(outcomes.size());
  for (Mask m : outcomes) {
    winners.emplace_back(inst, m);
  }
  return RuleOutcome(inst, std::move(winners));
}

}  // namespace pb
