#include "pb/noise.hpp"

#include <bit>

namespace pb {
namespace {

BigInt pow2(std::size_t e) { return BigInt(1) << e; }

void require_nondegenerate(NoiseModelKind kind, const Instance& inst,
                           const GroundTruth& truth) {
  if (truth_degenerate(kind, inst, truth)) {
    throw DegenerateTruthError(
        "the distribution is undefined for this ground truth (Z = 0)");
  }
}

Rational closed_form_z(NoiseModelKind kind, const Instance& inst,
                       const GroundTruth& truth) {
  const Mask star = truth.allocation.mask();
  switch (kind) {
    case NoiseModelKind::MApp: {
      // 2^|P| * (3/2)^|pi*|
      const std::size_t k = static_cast<std::size_t>(std::popcount(star));
      BigInt num = pow2(inst.size()) * boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(k));
      return make_rational(num, pow2(k));
    }
    case NoiseModelKind::MNCost:
      return Rational(pow2(inst.size() - 1) * BigInt(inst.cost_of(star)));
    case NoiseModelKind::MNApp:
      return Rational(pow2(inst.size() - 1) * BigInt(std::popcount(star)));
  }
  throw std::logic_error("unreachable");
}

BigInt ballot_weight(NoiseModelKind kind, const Instance& inst, Mask star,
                     Mask ballot) {
  switch (kind) {
    case NoiseModelKind::MApp:
      return pow2(static_cast<std::size_t>(std::popcount(star & ballot)));
    case NoiseModelKind::MNCost:
      return BigInt(inst.cost_of(star & ballot));
    case NoiseModelKind::MNApp:
      return BigInt(std::popcount(star & ballot));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string_view to_string(NoiseModelKind kind) {
  switch (kind) {
    case NoiseModelKind::MApp:
      return "m-app";
    case NoiseModelKind::MNCost:
      return "m-ncost";
    case NoiseModelKind::MNApp:
      return "m-napp";
  }
  return "?";
}

std::optional<NoiseModelKind> parse_noise_model(std::string_view name) {
  for (NoiseModelKind kind : kAllNoiseModels) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

bool truth_degenerate(NoiseModelKind kind, const Instance& inst,
                      const GroundTruth& truth) {
  (void)inst;
  switch (kind) {
    case NoiseModelKind::MApp:
      return false;
    case NoiseModelKind::MNCost:
    case NoiseModelKind::MNApp:
      return truth.allocation.mask() == 0;
  }
  return false;
}

Rational ballot_probability(NoiseModelKind kind, const Instance& inst,
                            const GroundTruth& truth, const Ballot& ballot) {
  require_nondegenerate(kind, inst, truth);
  const Rational weight(
      ballot_weight(kind, inst, truth.allocation.mask(), ballot.approved));
  return weight / closed_form_z(kind, inst, truth);
}

ZFactor normalisation_factor(NoiseModelKind kind, const Instance& inst,
                             const GroundTruth& truth,
                             std::size_t brute_force_cap) {
  require_nondegenerate(kind, inst, truth);
  ZFactor z{closed_form_z(kind, inst, truth), false};
  if (inst.size() <= brute_force_cap) {
    BigInt sum(0);
    const Mask full = inst.full_mask();
    for (Mask a = 0;; ++a) {
      sum += ballot_weight(kind, inst, truth.allocation.mask(), a);
      if (a == full) {
        break;
      }
    }
    if (Rational(sum) != z.value) {
      throw std::logic_error("closed-form Z disagrees with enumeration");
    }
    z.cross_checked = true;
  }
  return z;
}

Ballot sample_ballot(NoiseModelKind kind, const Instance& inst,
                     const GroundTruth& truth, RandomStream& rng) {
  require_nondegenerate(kind, inst, truth);
  const Mask star = truth.allocation.mask();
  Ballot out;

  if (kind == NoiseModelKind::MApp) {
    for (std::size_t p = 0; p < inst.size(); ++p) {
      const bool in_star = (star & mask_bit(p)) != 0;
      if (in_star ? rng.bernoulli(2, 3) : rng.bernoulli(1, 2)) {
        out.approved |= mask_bit(p);
      }
    }
    return out;
  }

  // Anchored models: pick one ground-truth project (by cost share for
  // m-ncost, uniformly for m-napp), force it in, coin-flip the rest.
  std::size_t anchor = kMaxProjects;
  if (kind == NoiseModelKind::MNCost) {
    std::int64_t pick = static_cast<std::int64_t>(
        rng.next_below(static_cast<std::uint64_t>(inst.cost_of(star))));
    Mask m = star;
    while (m != 0) {
      const std::size_t p = static_cast<std::size_t>(std::countr_zero(m));
      pick -= inst.projects()[p].cost;
      if (pick < 0) {
        anchor = p;
        break;
      }
      m &= m - 1;
    }
  } else {
    std::uint64_t pick =
        rng.next_below(static_cast<std::uint64_t>(std::popcount(star)));
    Mask m = star;
    while (true) {
      const std::size_t p = static_cast<std::size_t>(std::countr_zero(m));
      if (pick == 0) {
        anchor = p;
        break;
      }
      --pick;
      m &= m - 1;
    }
  }

  out.approved |= mask_bit(anchor);
  for (std::size_t p = 0; p < inst.size(); ++p) {
    if (p != anchor && rng.bernoulli(1, 2)) {
      out.approved |= mask_bit(p);
    }
  }
  return out;
}

Rational sampler_analytic_probability(NoiseModelKind kind, const Instance& inst,
                                      const GroundTruth& truth,
                                      const Ballot& ballot) {
  require_nondegenerate(kind, inst, truth);
  const Mask star = truth.allocation.mask();

  if (kind == NoiseModelKind::MApp) {
    Rational prob(1);
    for (std::size_t p = 0; p < inst.size(); ++p) {
      const bool in_star = (star & mask_bit(p)) != 0;
      const bool in_ballot = (ballot.approved & mask_bit(p)) != 0;
      if (in_star) {
        prob *= in_ballot ? make_rational(2, 3) : make_rational(1, 3);
      } else {
        prob *= make_rational(1, 2);
      }
    }
    return prob;
  }

  // Mixture over anchors: only anchors inside A ∩ pi* can produce A, each
  // followed by |P| - 1 independent coin flips.
  const Rational coin_flips = make_rational(1, pow2(inst.size() - 1));
  Rational anchor_mass(0);
  Mask m = star & ballot.approved;
  while (m != 0) {
    const std::size_t p = static_cast<std::size_t>(std::countr_zero(m));
    if (kind == NoiseModelKind::MNCost) {
      anchor_mass +=
          make_rational(inst.projects()[p].cost, inst.cost_of(star));
    } else {
      anchor_mass += make_rational(1, std::popcount(star));
    }
    m &= m - 1;
  }
  return anchor_mass * coin_flips;
}

Rational likelihood(NoiseModelKind kind, const Instance& inst,
                    const GroundTruth& truth, const Profile& prof) {
  if (truth_degenerate(kind, inst, truth)) {
    return Rational(0);
  }
  const Rational z = closed_form_z(kind, inst, truth);
  Rational out(1);
  for (const Ballot& ballot : prof.ballots) {
    out *= Rational(ballot_weight(kind, inst, truth.allocation.mask(),
                                  ballot.approved)) /
           z;
  }
  return out;
}

}  // namespace pb
