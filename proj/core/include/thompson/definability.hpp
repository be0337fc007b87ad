#pragma once

#include <cstdint>
#include <optional>

#include "thompson/logic/formula.hpp"
#include "thompson/wreath.hpp"

namespace thompson {

/// The formula (free variables x, y, z; function symbols mul/2 and inv/1;
/// parameter constants a, b)
///
///   x = y^s z^t  &  y a = a y  &  forall w (w a = a w -> z b_w = b_w z)
///
/// with b_w = w^-s b w^s. Requires s, t >= 1.
logic::Formula wreath_membership_formula(std::int64_t s, std::int64_t t);

/// Witnesses for x = embed(u): y = c^m and z = prod_k d_{k+m}^{e_k}, so that
/// y^s = a^m and z^t = a^-m h a^m.
struct MembershipWitness {
  PLMap y;
  PLMap z;
  /// The matrix of the formula holds at (x, y, z) with the universal
  /// quantifier checked on the pool {c^j : -pool_size/2 <= j < pool_size/2}.
  bool holds;
  std::size_t pool_size;
};

MembershipWitness membership_witness(const WreathElement& u, const Generators& gens, std::size_t pool_size = 50);

/// Bounded search for a witness of "exists y z (matrix)" for an arbitrary x:
/// y over c^j with |j| <= y_radius, z over prod_{|k| <= z_radius} d_k^{e_k}
/// with e_k in {-1, 0, 1}, w over the pool of membership_witness. A negative
/// answer is one-sided evidence of non-membership.
bool membership_search(const PLMap& x, const Generators& gens, std::int64_t y_radius = 5, std::int64_t z_radius = 2,
                       std::size_t pool_size = 50);

}  // namespace thompson
