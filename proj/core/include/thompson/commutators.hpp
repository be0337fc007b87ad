#pragma once

#include <array>
#include <vector>

#include "thompson/pl_map.hpp"

namespace thompson {

/// The pair (x, y) standing for the commutator [x, y] = x^-1 y^-1 x y.
struct CommutatorPair {
  PLMap x;
  PLMap y;

  friend bool operator==(const CommutatorPair&, const CommutatorPair&) = default;
};

/// Ordered list of pairs; its value is the product of the commutators.
using CommutatorList = std::vector<CommutatorPair>;

PLMap value(const CommutatorPair& c);
PLMap value(const CommutatorList& list, const GroupContext& ctx);

/// Among the points of A in ]lo; hi[ with the least denominator n^j, the one
/// nearest the midpoint (lower on a tie).
Rational simplest_A_point(const GroupContext& ctx, const Rational& lo, const Rational& hi);

/// Rewrites (x, y) as a pair (x', y') in F-circle supported inside
/// ]alpha2; beta2[ with [x', y'] = [x, y]. The commutator's support must lie
/// strictly inside ]alpha2; beta2[, with alpha2, beta2 interior points of A.
CommutatorPair squeeze_commutator(const CommutatorPair& c, const Rational& alpha2, const Rational& beta2);

/// Same, with the window ]alpha2; beta2[ chosen from the simplest A-points
/// between the commutator's support and the endpoints 0 and r.
CommutatorPair squeeze_to_F_circle(const CommutatorPair& c);

/// (prod x_i, prod y_i) for pairs whose entries live in pairwise disjoint
/// closed intervals; its commutator is the product of the inputs.
CommutatorPair merge_disjoint(const CommutatorList& pairs, const GroupContext& ctx);

/// Details of one three-into-two rewrite, kept for inspection.
struct ThreeToTwo {
  /// Common window ]alpha; beta[ holding the three commutator supports.
  Rational alpha;
  Rational beta;
  /// Displacement element with (alpha)b > beta.
  PLMap b;
  /// Merged pair for c1 c2^b c3^(b^-1), then the pair for
  /// [c2^-1 c3^(b^-1), b]; both rewritten into F-circle.
  std::array<CommutatorPair, 2> pairs;
};

/// c1 c2 c3 = (c1 c2^b c3^(b^-1)) [c2^-1 c3^(b^-1), b], checked exactly.
ThreeToTwo three_to_two(const CommutatorPair& c1, const CommutatorPair& c2, const CommutatorPair& c3);

/// Two pairs with entries in F-circle whose product equals the product of
/// the list. The running product is re-checked after every rewrite.
std::array<CommutatorPair, 2> decompose_to_two(const CommutatorList& list);

}  // namespace thompson
