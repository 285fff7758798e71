#pragma once

#include "pb/errors.hpp"
#include "pb/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pb {

// A set of projects of one instance, one bit per project in instance order.
using Mask = std::uint64_t;

// Hard bound implied by the mask representation. Enumeration-based
// operations are further limited by their (configurable) enumeration cap.
inline constexpr std::size_t kMaxProjects = 64;
inline constexpr std::size_t kDefaultEnumerationCap = 20;
inline constexpr std::size_t kDefaultBranchCap = 10'000;

inline constexpr Mask mask_bit(std::size_t index) { return Mask{1} << index; }

struct Project {
  std::string id;
  std::int64_t cost = 1;  // positive, in currency units

  bool operator==(const Project&) const = default;
};

// A budgeting problem: an ordered set of distinctly named projects with
// positive integer costs, plus a positive budget limit.
class Instance {
 public:
  Instance(std::vector<Project> projects, std::int64_t budget);

  const std::vector<Project>& projects() const { return projects_; }
  std::size_t size() const { return projects_.size(); }
  std::int64_t budget() const { return budget_; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  std::size_t require_index(std::string_view id) const;

  std::int64_t cost_of(Mask selection) const;
  Mask full_mask() const;

  bool operator==(const Instance& other) const {
    return projects_ == other.projects_ && budget_ == other.budget_;
  }

 private:
  std::vector<Project> projects_;
  std::int64_t budget_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// An approval ballot over one instance; may be empty.
struct Ballot {
  Mask approved = 0;

  bool operator==(const Ballot&) const = default;
};

Ballot make_ballot(const Instance& inst, const std::vector<std::string>& ids);

// Ordered sequence of ballots; agent order is meaningful under concatenation.
struct Profile {
  std::vector<Ballot> ballots;

  std::size_t size() const { return ballots.size(); }
  bool empty() const { return ballots.empty(); }

  bool operator==(const Profile&) const = default;
};

Profile concat(const Profile& a, const Profile& b);

// A feasible subset of projects. Feasibility (total cost within budget) is
// checked at construction, so an infeasible allocation cannot exist.
class BudgetAllocation {
 public:
  BudgetAllocation(const Instance& inst, Mask selected);

  Mask mask() const { return selected_; }
  bool contains(std::size_t project_index) const {
    return (selected_ & mask_bit(project_index)) != 0;
  }

  bool operator==(const BudgetAllocation&) const = default;

 private:
  Mask selected_;
};

std::int64_t total_cost(const BudgetAllocation& alloc, const Instance& inst);

// True iff no unselected project fits within the remaining budget.
bool is_exhaustive(const BudgetAllocation& alloc, const Instance& inst);

// True iff all projects share one cost and the budget is a multiple of it.
bool is_unit_cost(const Instance& inst);

// All feasible (or all exhaustive) allocations, in ascending mask order.
std::vector<BudgetAllocation> enumerate_allocations(
    const Instance& inst, bool exhaustive_only,
    std::size_t cap = kDefaultEnumerationCap);

std::vector<std::string> sorted_ids(const Instance& inst, Mask selection);

// A nonempty set of tied winning allocations. Winners are deduplicated and
// held in canonical order: lexicographic on their sorted project-id lists.
class RuleOutcome {
 public:
  RuleOutcome(const Instance& inst, std::vector<BudgetAllocation> winners);

  const std::vector<BudgetAllocation>& winners() const { return winners_; }
  std::size_t size() const { return winners_.size(); }
  bool contains(Mask m) const;
  bool contains(const BudgetAllocation& a) const { return contains(a.mask()); }

  std::vector<std::vector<std::string>> id_lists(const Instance& inst) const;

  bool operator==(const RuleOutcome&) const = default;

 private:
  std::vector<BudgetAllocation> winners_;
};

std::string describe(const RuleOutcome& outcome, const Instance& inst);
std::ostream& operator<<(std::ostream& os, const RuleOutcome& outcome);

}  // namespace pb
