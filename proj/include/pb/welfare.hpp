#pragma once

#include "pb/core.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace pb {

// The eight welfare score functions. Utilitarian kinds sum per-ballot
// satisfactions, Nash kinds multiply them; "norm" kinds divide each ballot's
// satisfaction by the size (card) or cost of the allocation.
enum class ScoreKind {
  UtilCard,
  UtilCost,
  UtilNormCard,
  UtilNormCost,
  NashCard,
  NashCost,
  NashNormCard,
  NashNormCost,
};

inline constexpr std::array<ScoreKind, 8> kAllScoreKinds = {
    ScoreKind::UtilCard,     ScoreKind::UtilCost,
    ScoreKind::UtilNormCard, ScoreKind::UtilNormCost,
    ScoreKind::NashCard,     ScoreKind::NashCost,
    ScoreKind::NashNormCard, ScoreKind::NashNormCost,
};

std::string_view to_string(ScoreKind kind);
std::optional<ScoreKind> parse_score_kind(std::string_view name);

// Nash scores are kept in product space, never log space, so the defined
// zero of a degenerate allocation is genuinely minimal. `degenerate` flags
// the defined-as-zero cases: a zero factor under the Nash kinds, or the
// empty allocation under the normalised kinds. All degenerate scores tie at
// value 0.
struct Score {
  Rational value;
  bool degenerate = false;
};

Score score(ScoreKind kind, const Instance& inst, const Profile& prof,
            const BudgetAllocation& alloc);

// All feasible allocations maximising the score; ties are kept.
RuleOutcome argmax_rule(ScoreKind kind, const Instance& inst,
                        const Profile& prof,
                        std::size_t enumeration_cap = kDefaultEnumerationCap);

std::int64_t approval_score(const Instance& inst, const Profile& prof,
                            std::string_view project_id);
std::vector<std::int64_t> approval_counts(const Instance& inst,
                                          const Profile& prof);

// Scans projects by descending approval score and selects each one that
// still fits the budget; branches over every strict ranking consistent with
// the scores and merges duplicate results. Every output is exhaustive.
RuleOutcome greedy_cost_approval(const Instance& inst, const Profile& prof,
                                 std::size_t branch_cap = kDefaultBranchCap);

}  // namespace pb
