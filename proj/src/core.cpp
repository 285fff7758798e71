#include "pb/core.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>

namespace pb {

Instance::Instance(std::vector<Project> projects, std::int64_t budget)
    : projects_(std::move(projects)), budget_(budget) {
  if (projects_.empty()) {
    throw StructuralError("instance needs at least one project");
  }
  if (projects_.size() > kMaxProjects) {
    throw StructuralError("instance exceeds the " +
                          std::to_string(kMaxProjects) + "-project bound");
  }
  if (budget_ < 1) {
    throw StructuralError("budget must be a positive integer");
  }
  for (std::size_t i = 0; i < projects_.size(); ++i) {
    const Project& p = projects_[i];
    if (p.id.empty()) {
      throw StructuralError("project with empty id");
    }
    if (p.cost < 1) {
      throw StructuralError("project '" + p.id +
                            "' must have a positive integer cost");
    }
    if (!index_.emplace(p.id, i).second) {
      throw StructuralError("duplicate project id '" + p.id + "'");
    }
  }
}

std::optional<std::size_t> Instance::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t Instance::require_index(std::string_view id) const {
  auto idx = index_of(id);
  if (!idx) {
    throw StructuralError("unknown project id '" + std::string(id) + "'");
  }
  return *idx;
}

std::int64_t Instance::cost_of(Mask selection) const {
  std::int64_t total = 0;
  while (selection != 0) {
    const int i = std::countr_zero(selection);
    total += projects_[static_cast<std::size_t>(i)].cost;
    selection &= selection - 1;
  }
  return total;
}

Mask Instance::full_mask() const {
  if (projects_.size() == kMaxProjects) {
    return ~Mask{0};
  }
  return (Mask{1} << projects_.size()) - 1;
}

Ballot make_ballot(const Instance& inst, const std::vector<std::string>& ids) {
  Ballot b;
  for (const std::string& id : ids) {
    b.approved |= mask_bit(inst.require_index(id));
  }
  return b;
}

Profile concat(const Profile& a, const Profile& b) {
  Profile out = a;
  out.ballots.insert(out.ballots.end(), b.ballots.begin(), b.ballots.end());
  return out;
}

BudgetAllocation::BudgetAllocation(const Instance& inst, Mask selected)
    : selected_(selected) {
  if ((selected & ~inst.full_mask()) != 0) {
    throw StructuralError("allocation references projects outside the instance");
  }
  if (inst.cost_of(selected) > inst.budget()) {
    throw StructuralError("allocation exceeds the budget limit");
  }
}

std::int64_t total_cost(const BudgetAllocation& alloc, const Instance& inst) {
  return inst.cost_of(alloc.mask());
}

bool is_exhaustive(const BudgetAllocation& alloc, const Instance& inst) {
  const std::int64_t used = inst.cost_of(alloc.mask());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!alloc.contains(i) && used + inst.projects()[i].cost <= inst.budget()) {
      return false;
    }
  }
  return true;
}

bool is_unit_cost(const Instance& inst) {
  const std::int64_t unit = inst.projects().front().cost;
  for (const Project& p : inst.projects()) {
    if (p.cost != unit) {
      return false;
    }
  }
  return inst.budget() % unit == 0;
}

std::vector<BudgetAllocation> enumerate_allocations(const Instance& inst,
                                                    bool exhaustive_only,
                                                    std::size_t cap) {
  if (inst.size() > cap) {
    throw EnumerationLimitError(
        "instance has " + std::to_string(inst.size()) +
        " projects, above the enumeration cap of " + std::to_string(cap));
  }
  std::vector<BudgetAllocation> out;
  const Mask full = inst.full_mask();
  for (Mask m = 0;; ++m) {
    if (inst.cost_of(m) <= inst.budget()) {
      BudgetAllocation alloc(inst, m);
      if (!exhaustive_only || is_exhaustive(alloc, inst)) {
        out.push_back(alloc);
      }
    }
    if (m == full) {
      break;
    }
  }
  return out;
}

std::vector<std::string> sorted_ids(const Instance& inst, Mask selection) {
  std::vector<std::string> ids;
  while (selection != 0) {
    const int i = std::countr_zero(selection);
    ids.push_back(inst.projects()[static_cast<std::size_t>(i)].id);
    selection &= selection - 1;
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

RuleOutcome::RuleOutcome(const Instance& inst,
                         std::vector<BudgetAllocation> winners) {
  if (winners.empty()) {
    throw StructuralError("rule outcome must be nonempty");
  }
  std::vector<std::pair<std::vector<std::string>, BudgetAllocation>> keyed;
  keyed.reserve(winners.size());
  for (const BudgetAllocation& w : winners) {
    keyed.emplace_back(sorted_ids(inst, w.mask()), w);
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, alloc] : keyed) {
    if (winners_.empty() || winners_.back().mask() != alloc.mask()) {
      winners_.push_back(alloc);
    }
  }
}

bool RuleOutcome::contains(Mask m) const {
  for (const BudgetAllocation& w : winners_) {
    if (w.mask() == m) {
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::string>> RuleOutcome::id_lists(
    const Instance& inst) const {
  std::vector<std::vector<std::string>> out;
  out.reserve(winners_.size());
  for (const BudgetAllocation& w : winners_) {
    out.push_back(sorted_ids(inst, w.mask()));
  }
  return out;
}

std::string describe(const RuleOutcome& outcome, const Instance& inst) {
  std::ostringstream os;
  os << '{';
  bool first_set = true;
  for (const auto& ids : outcome.id_lists(inst)) {
    if (!first_set) {
      os << ", ";
    }
    first_set = false;
    os << '{';
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i > 0) {
        os << ',';
      }
      os << ids[i];
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RuleOutcome& outcome) {
  os << '{';
  bool first = true;
  for (const BudgetAllocation& w : outcome.winners()) {
    if (!first) {
      os << ", ";
    }
    first = false;
    os << "0b";
    Mask m = w.mask();
    if (m == 0) {
      os << '0';
    } else {
      std::string bits;
      while (m != 0) {
        bits.push_back((m & 1) != 0 ? '1' : '0');
        m >>= 1;
      }
      os << std::string(bits.rbegin(), bits.rend());
    }
  }
  return os << '}';
}

}  // namespace pb
