#pragma once

#include <stdexcept>
#include <string>

namespace pb {

// Malformed domain objects: unknown or duplicate project ids, infeasible
// allocations, empty profiles handed to a rule, instances over the size bound.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation would have to enumerate more subsets than the configured cap.
class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tie exploration exceeded the configured branch cap.
class BranchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The noise model's distribution is undefined for the given ground truth
// (normalisation factor would be zero).
class DegenerateTruthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested ground-truth space contains no candidate allocation.
class EmptyTruthSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pb
