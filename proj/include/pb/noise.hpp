#pragma once

#include "pb/core.hpp"
#include "pb/rng.hpp"

#include <optional>
#include <string_view>

namespace pb {

// The three ballot-generating models. Ballot weights given ground truth pi*:
//   m-app    2^|A ∩ pi*|
//   m-ncost  c(A ∩ pi*)
//   m-napp   |A ∩ pi*|
enum class NoiseModelKind { MApp, MNCost, MNApp };

inline constexpr std::array<NoiseModelKind, 3> kAllNoiseModels = {
    NoiseModelKind::MApp, NoiseModelKind::MNCost, NoiseModelKind::MNApp};

std::string_view to_string(NoiseModelKind kind);
std::optional<NoiseModelKind> parse_noise_model(std::string_view name);

struct GroundTruth {
  BudgetAllocation allocation;
};

// m-ncost and m-napp are undefined for an empty ground truth (their
// normalisation factor would be zero); m-app is defined everywhere.
bool truth_degenerate(NoiseModelKind kind, const Instance& inst,
                      const GroundTruth& truth);

// Exact probability of one ballot. Throws DegenerateTruthError when the
// distribution is undefined for this ground truth.
Rational ballot_probability(NoiseModelKind kind, const Instance& inst,
                            const GroundTruth& truth, const Ballot& ballot);

struct ZFactor {
  Rational value;
  bool cross_checked = false;  // brute-force enumeration confirmed the value
};

// Closed-form normalisation factor; cross-checked against the brute-force
// sum over all ballots whenever the instance is within brute_force_cap.
ZFactor normalisation_factor(NoiseModelKind kind, const Instance& inst,
                             const GroundTruth& truth,
                             std::size_t brute_force_cap = 12);

// Exact constructive sampler (no rejection, no ballot enumeration):
//   m-app    every truth project independently with probability 2/3,
//            every other project with probability 1/2;
//   m-ncost  an anchor from pi* drawn with probability c(p)/c(pi*) is forced
//            into the ballot, every other project follows with 1/2;
//   m-napp   same with a uniform anchor.
Ballot sample_ballot(NoiseModelKind kind, const Instance& inst,
                     const GroundTruth& truth, RandomStream& rng);

// Probability the constructive sampler produces this exact ballot, computed
// from the sampling scheme itself. Serves as the independent counterpart of
// ballot_probability.
Rational sampler_analytic_probability(NoiseModelKind kind, const Instance& inst,
                                      const GroundTruth& truth,
                                      const Ballot& ballot);

// Product of per-ballot probabilities; defined as 0 for degenerate truths so
// likelihood maximisation can skip them without special cases.
Rational likelihood(NoiseModelKind kind, const Instance& inst,
                    const GroundTruth& truth, const Profile& prof);

}  // namespace pb
