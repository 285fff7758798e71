#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pb/checks.hpp"
#include "pb/noise.hpp"

#include <bit>
#include <map>

using namespace pb;

namespace {

// Brute-force oracle: weight of each ballot per the model definition,
// normalised by the enumerated sum. Independent of the library's closed
// forms.
std::map<Mask, Rational> oracle_table(NoiseModelKind kind,
                                      const Instance& inst, Mask star) {
  std::map<Mask, BigInt> weights;
  BigInt z = 0;
  for (Mask a = 0; a <= inst.full_mask(); ++a) {
    BigInt w;
    switch (kind) {
      case NoiseModelKind::MApp:
        w = BigInt(1) << std::popcount(a & star);
        break;
      case NoiseModelKind::MNCost:
        w = inst.cost_of(a & star);
        break;
      case NoiseModelKind::MNApp:
        w = std::popcount(a & star);
        break;
    }
    weights[a] = w;
    z += w;
    if (a == inst.full_mask()) {
      break;
    }
  }
  std::map<Mask, Rational> table;
  for (const auto& [a, w] : weights) {
    table[a] = make_rational(w, z);
  }
  return table;
}

}  // namespace

TEST_CASE("model names round-trip") {
  for (NoiseModelKind kind : kAllNoiseModels) {
    CHECK(parse_noise_model(to_string(kind)) == kind);
  }
  CHECK(!parse_noise_model("gauss").has_value());
}

TEST_CASE("ballot probabilities on the two-project tables") {
  const Instance inst({{"p1", 1}, {"p2", 1}}, 2);
  const Mask m1 = mask_bit(0), m2 = mask_bit(1), m12 = m1 | m2;

  const GroundTruth both{BudgetAllocation(inst, m12)};
  CHECK(ballot_probability(NoiseModelKind::MNCost, inst, both, Ballot{m1}) ==
        make_rational(1, 4));
  CHECK(ballot_probability(NoiseModelKind::MNCost, inst, both, Ballot{m12}) ==
        make_rational(1, 2));
  CHECK(ballot_probability(NoiseModelKind::MNCost, inst, both, Ballot{}) ==
        Rational(0));

  const GroundTruth just1{BudgetAllocation(inst, m1)};
  CHECK(ballot_probability(NoiseModelKind::MApp, inst, just1, Ballot{}) ==
        make_rational(1, 6));
  CHECK(ballot_probability(NoiseModelKind::MApp, inst, just1, Ballot{m1}) ==
        make_rational(1, 3));
  CHECK(ballot_probability(NoiseModelKind::MApp, inst, just1, Ballot{m2}) ==
        make_rational(1, 6));
  CHECK(ballot_probability(NoiseModelKind::MApp, inst, just1, Ballot{m12}) ==
        make_rational(1, 3));

  const GroundTruth empty{BudgetAllocation(inst, 0)};
  CHECK_THROWS_AS(
      ballot_probability(NoiseModelKind::MNApp, inst, empty, Ballot{}),
      DegenerateTruthError);
  CHECK_THROWS_AS(
      ballot_probability(NoiseModelKind::MNCost, inst, empty, Ballot{}),
      DegenerateTruthError);
}

TEST_CASE("normalisation factors match enumeration") {
  // 3 projects, truth of size 2: Z for m-app enumerates to 18 = 2^3 (3/2)^2
  const Instance inst3({{"p1", 1}, {"p2", 1}, {"p3", 1}}, 3);
  const GroundTruth truth2{BudgetAllocation(inst3, mask_bit(0) | mask_bit(1))};
  BigInt brute = 0;
  for (Mask a = 0; a <= inst3.full_mask(); ++a) {
    brute += BigInt(1) << std::popcount(a & truth2.allocation.mask());
  }
  CHECK(brute == 18);
  const ZFactor z_app =
      normalisation_factor(NoiseModelKind::MApp, inst3, truth2);
  CHECK(z_app.value == Rational(18));
  CHECK(z_app.cross_checked);

  const Instance inst2({{"p1", 1}, {"p2", 1}}, 2);
  const GroundTruth both{BudgetAllocation(inst2, inst2.full_mask())};
  CHECK(normalisation_factor(NoiseModelKind::MNCost, inst2, both).value ==
        Rational(4));
  const GroundTruth just1{BudgetAllocation(inst2, mask_bit(0))};
  CHECK(normalisation_factor(NoiseModelKind::MNApp, inst2, just1).value ==
        Rational(2));

  // above the brute-force cap the closed form is returned unchecked
  std::vector<Project> many;
  for (int i = 0; i < 14; ++i) {
    many.push_back({"p" + std::to_string(i + 1), 1});
  }
  const Instance big(std::move(many), 3);
  const ZFactor z_big = normalisation_factor(
      NoiseModelKind::MNApp, big, GroundTruth{BudgetAllocation(big, 1)});
  CHECK(!z_big.cross_checked);
  CHECK(z_big.value == Rational(BigInt(1) << 13));
}

TEST_CASE("probabilities sum to one and match the oracle exactly") {
  RandomStream root(321);
  const FuzzParams params{6, 1, 1, 4};
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    RandomStream rng = root.split(trial);
    const Instance inst = random_instance(rng, params);
    const auto feasible = enumerate_allocations(inst, false);
    const BudgetAllocation star = feasible[rng.next_below(feasible.size())];
    for (NoiseModelKind kind : kAllNoiseModels) {
      if (truth_degenerate(kind, inst, GroundTruth{star})) {
        continue;
      }
      const auto table = oracle_table(kind, inst, star.mask());
      Rational sum(0);
      for (const auto& [mask, expected] : table) {
        const Rational got = ballot_probability(kind, inst, GroundTruth{star},
                                                Ballot{mask});
        CHECK(got == expected);
        sum += got;
      }
      CHECK(sum == Rational(1));
    }
  }
}

TEST_CASE("sampler analytic probabilities equal the model probabilities") {
  RandomStream root(322);
  const FuzzParams params{5, 1, 1, 3};
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    RandomStream rng = root.split(trial);
    const Instance inst = random_instance(rng, params);
    const auto feasible = enumerate_allocations(inst, false);
    const BudgetAllocation star = feasible[rng.next_below(feasible.size())];
    for (NoiseModelKind kind : kAllNoiseModels) {
      if (truth_degenerate(kind, inst, GroundTruth{star})) {
        continue;
      }
      for (Mask a = 0; a <= inst.full_mask(); ++a) {
        CHECK(sampler_analytic_probability(kind, inst, GroundTruth{star},
                                           Ballot{a}) ==
              ballot_probability(kind, inst, GroundTruth{star}, Ballot{a}));
        if (a == inst.full_mask()) {
          break;
        }
      }
    }
  }
}

TEST_CASE("samplers are deterministic given the seed") {
  const Instance inst({{"p1", 1}, {"p2", 2}, {"p3", 3}}, 3);
  const GroundTruth truth{BudgetAllocation(inst, mask_bit(0) | mask_bit(1))};
  for (NoiseModelKind kind : kAllNoiseModels) {
    RandomStream a(99, {4});
    RandomStream b(99, {4});
    for (int i = 0; i < 50; ++i) {
      CHECK(sample_ballot(kind, inst, truth, a) ==
            sample_ballot(kind, inst, truth, b));
    }
  }
}

TEST_CASE("anchored samplers always intersect the ground truth") {
  const Instance inst({{"p1", 1}, {"p2", 2}, {"p3", 3}}, 3);
  const GroundTruth truth{BudgetAllocation(inst, mask_bit(0) | mask_bit(1))};
  for (NoiseModelKind kind :
       {NoiseModelKind::MNCost, NoiseModelKind::MNApp}) {
    RandomStream rng(7, {static_cast<std::uint64_t>(kind)});
    for (int i = 0; i < 500; ++i) {
      const Ballot b = sample_ballot(kind, inst, truth, rng);
      CHECK((b.approved & truth.allocation.mask()) != 0);
    }
  }
  RandomStream rng(8);
  const GroundTruth empty{BudgetAllocation(inst, 0)};
  CHECK_THROWS_AS(sample_ballot(NoiseModelKind::MNApp, inst, empty, rng),
                  DegenerateTruthError);
}

TEST_CASE("likelihood is the exact product of ballot probabilities") {
  const Instance inst({{"p1", 1}, {"p2", 1}}, 2);
  const GroundTruth both{BudgetAllocation(inst, inst.full_mask())};
  const Profile split{{make_ballot(inst, {"p1"}), make_ballot(inst, {"p2"})}};

  CHECK(likelihood(NoiseModelKind::MNCost, inst, both, Profile{}) ==
        Rational(1));
  CHECK(likelihood(NoiseModelKind::MNCost, inst, both, split) ==
        make_rational(1, 16));
  const GroundTruth just1{BudgetAllocation(inst, mask_bit(0))};
  CHECK(likelihood(NoiseModelKind::MNCost, inst, just1, split) == Rational(0));

  // degenerate truths have likelihood zero rather than erroring
  const GroundTruth empty{BudgetAllocation(inst, 0)};
  CHECK(likelihood(NoiseModelKind::MNApp, inst, empty, split) == Rational(0));
}

TEST_CASE("likelihood satisfies the product law on random inputs") {
  RandomStream root(323);
  const FuzzParams params{4, 4, 1, 3};
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    RandomStream rng = root.split(trial);
    const Instance inst = random_instance(rng, params);
    const auto feasible = enumerate_allocations(inst, false);
    const BudgetAllocation star = feasible[rng.next_below(feasible.size())];
    const Profile a = random_profile(rng, inst, 4);
    const Profile b = random_profile(rng, inst, 4);
    for (NoiseModelKind kind : kAllNoiseModels) {
      CHECK(likelihood(kind, inst, GroundTruth{star}, concat(a, b)) ==
            likelihood(kind, inst, GroundTruth{star}, a) *
                likelihood(kind, inst, GroundTruth{star}, b));
    }
  }
}
