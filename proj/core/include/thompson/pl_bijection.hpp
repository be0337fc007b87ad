#pragma once

#include <string>
#include <vector>

#include "thompson/pl_map.hpp"

namespace thompson {

/// One affine piece t -> slope * t + offset on the left-closed interval [lo; hi).
struct AffinePiece {
  Rational lo;
  Rational hi;
  Rational slope;
  Rational offset;

  Rational at(const Rational& t) const { return slope * t + offset; }
  /// Value at lo and left limit at hi.
  Rational image_lo() const { return at(lo); }
  Rational image_hi() const { return at(hi); }

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// Right-continuous piecewise-affine bijection of [0; r): an element of
/// V(r, <n>, Z[1/n]).
class PLBijection {
 public:
  /// Validates the partition, image partition, slopes and ring membership.
  /// Adjacent pieces that continue the same affine map are merged.
  PLBijection(GroupContext ctx, std::vector<AffinePiece> pieces);

  /// Builds from a domain partition 0 = d_0 < ... < d_k = r, the lengths it
  /// induces, and a permutation saying where each domain block goes: block i
  /// is mapped affinely onto image block order[i] of the image partition.
  static PLBijection from_partitions(const GroupContext& ctx, const std::vector<Rational>& domain_cuts,
                                     const std::vector<Rational>& image_cuts, const std::vector<std::size_t>& order);

  const GroupContext& context() const { return ctx_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  friend bool operator==(const PLBijection&, const PLBijection&) = default;

 private:
  GroupContext ctx_;
  std::vector<AffinePiece> pieces_;
};

PLBijection to_bijection(const PLMap& x);
Rational evaluate(const PLBijection& v, const Rational& t);
/// First v, then w.
PLBijection compose(const PLBijection& v, const PLBijection& w);
PLBijection inverse(const PLBijection& v);
bool commutes(const PLBijection& v, const PLBijection& w);

/// Continuity in the usual topology of [0; r) (membership in F).
bool is_continuous(const PLBijection& v);
/// Continuity on the circle R / rZ (membership in T).
bool is_circle_continuous(const PLBijection& v);
/// Interior piece boundaries where the left limit differs from the value.
std::vector<Rational> discontinuities(const PLBijection& v);

/// t -> t + c mod r.
PLBijection rotation(const GroupContext& ctx, const Rational& c);

std::string to_string(const PLBijection& v);

}  // namespace thompson
