#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "thompson/constructions.hpp"

namespace thompson {

/// Exponents of the two boundary slopes: (0)x'+ = n^s0 and (r)x'- = n^sr.
/// Every slope-defined subset of F used by the arithmetic interpretation is
/// a function of this pair.
struct SlopeClass {
  std::int64_t s0 = 0;
  std::int64_t sr = 0;

  /// Identity near both endpoints.
  bool in_F_circle() const { return s0 == 0 && sr == 0; }
  bool in_E() const { return !in_F_circle(); }
  bool in_E2() const { return s0 != 0 && sr != 0; }
  bool in_P_plus() const { return s0 > 0 && sr > 0; }
  bool in_P_minus() const { return s0 < 0 && sr < 0; }
  bool in_P() const { return in_P_plus() || in_P_minus(); }
  bool in_U() const { return s0 == -sr && (s0 == 1 || s0 == -1); }
  bool in_B() const { return s0 == sr && s0 > 0; }

  friend bool operator==(const SlopeClass&, const SlopeClass&) = default;
};

SlopeClass classify(const PLMap& x);

/// r/2 when it lies in A; otherwise, among interior points of A with the
/// least denominator, the one nearest r/2 (the lower one on a tie).
Rational default_split_point(const GroupContext& ctx);

/// The element of B with decode k: an up-bump on ]0; gamma[ with slope n^k at
/// 0 times a down-bump on ]gamma; r[ with slope n^k at r. Requires k >= 1.
PLMap encode_nat(const GroupContext& ctx, std::int64_t k, const Rational& gamma);
PLMap encode_nat(const GroupContext& ctx, std::int64_t k);

/// log_n of the common boundary slope of an element of B.
std::int64_t decode(const PLMap& x);

/// decode(x) + decode(y) = decode(z), decided as x y z^-1 in F-circle.
bool add_bridge(const PLMap& x, const PLMap& y, const PLMap& z);

/// decode(x) | decode(y).
bool divides_bridge(const PLMap& x, const PLMap& y);

/// Explicit witness for one instance of the divisibility formula: z in
/// F-circle with x z = x1 x2 (disjoint bumps on ]0; gamma[ and ]gamma; r[),
/// and w = x1^-m x2^-m in the centralizer of x z with y w in F-circle.
struct DivisibilityWitness {
  PLMap x1;
  PLMap x2;
  PLMap z;
  PLMap w;
  std::int64_t quotient;
};

/// The split x z = x1 x2 used by the witness constructions.
struct Split {
  PLMap x1;
  PLMap x2;
  PLMap z;
};

/// x1 = up-bump on ]0; gamma[ with slope (0)x'+ at 0, x2 = a bump on
/// ]gamma; r[ with slope (r)x'- at r, z = x^-1 x1 x2.
Split split_at(const PLMap& x, const Rational& gamma);

/// Witness for decode(x) | decode(y), or nullopt when it does not divide.
/// The returned witness has been verified: w commutes with x z, z and y w
/// lie in F-circle, and x z = x1 x2.
std::optional<DivisibilityWitness> divides_witness(const PLMap& x, const PLMap& y, const Rational& gamma);
std::optional<DivisibilityWitness> divides_witness(const PLMap& x, const PLMap& y);

/// True iff no w = x1^i x2^j with |i|, |j| <= range puts y w into F-circle,
/// where x z = x1 x2 is the split of x. Evidence (over a finite lattice) for
/// the negative direction.
bool lattice_refutes_divisibility(const PLMap& x, const PLMap& y, std::int64_t range);

/// Result of the construction showing U is not swallowed by the rest of
/// E2 \ P.
struct UCertificate {
  /// The symmetry applied to bring x into the normal case s0 >= 2, sr < 0:
  /// "none", "inverse" or "reflect+inverse" (applied in that order).
  std::string symmetry;
  PLMap x;  // x after the symmetry
  PLMap y;
  PLMap x1;
  PLMap x2;
  PLMap z;
  std::int64_t range;
  std::size_t pairs_checked;
  /// No pair (w1, w2) of the lattice has w1 w2^-1 in E2 while y w1 and y w2
  /// both leave E2.
  bool holds;
};

/// Requires x in E2, not in P, not in U.
UCertificate u_counterexample(const PLMap& x, std::int64_t range = 6);
UCertificate u_counterexample(const PLMap& x, std::int64_t range, const Rational& gamma);

}  // namespace thompson
