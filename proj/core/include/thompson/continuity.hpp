#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "thompson/pl_bijection.hpp"

/// Randomized searches for discontinuous elements of V that commute with
/// up-bumps. Every element of V is right-continuous with finitely many
/// discontinuities, so commuting is the only hypothesis left to test.
namespace thompson {

struct ContinuityReport {
  std::size_t trials = 0;
  /// Candidates commuting with every map of the family.
  std::size_t commuting = 0;
  /// Commuting candidates that are discontinuous; must stay 0.
  std::size_t counterexamples = 0;
  /// Discontinuous candidates that commute only with the product of the
  /// family (whose support is not an interval); expected to be positive.
  std::size_t control_hits = 0;
  std::optional<std::string> first_counterexample;

  bool holds() const { return counterexamples == 0; }
};

/// Candidates against z = w^2, w = make_bump(0, r, n, 1/n), a full up-bump
/// moving every point of ]0; r[. Families, rotating by trial index: random
/// V elements, powers of w, w^j composed with random V elements, random V
/// conjugates of w^j, and w^j composed with rotations.
ContinuityReport full_bump_campaign(const GroupContext& ctx, std::uint64_t seed, std::size_t trials);

/// Candidates against Z = {z1, z2}: z1 an up-bump on ]0; r/2[ and z2 its
/// translate on ]r/2; r[, so the supports are dense in ]0; r[. Families:
/// random V elements, z1^i z2^j, the half rotation times (z1 z2)^k, and
/// random V conjugates. The half rotation commutes with z1 z2 but not with
/// z1, and feeds control_hits. Requires r/2 in A.
ContinuityReport bump_family_campaign(const GroupContext& ctx, std::uint64_t seed, std::size_t trials);

}  // namespace thompson
