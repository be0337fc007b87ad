#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thompson/rational.hpp"

namespace thompson {

struct Breakpoint {
  Rational x;
  Rational y;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Open interval ]lo; hi[.
struct OpenInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& t) const { return lo < t && t < hi; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Closed interval [lo; hi]; lo == hi describes an isolated point.
struct ClosedInterval {
  Rational lo;
  Rational hi;

  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// Ordered, pairwise disjoint open intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<OpenInterval> intervals);

  const std::vector<OpenInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  bool contains(const Rational& t) const;

  /// True iff every interval of *this lies inside some interval of other.
  bool subset_of(const IntervalSet& other) const;
  bool disjoint_from(const IntervalSet& other) const;
  /// Union of two sets of the form produced by support(); touching
  /// intervals are kept separate.
  IntervalSet unite(const IntervalSet& other) const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<OpenInterval> intervals_;
};

/// Element of F(r, <n>, Z[1/n]) stored as its breakpoint list on [0; r].
///
/// Maps act on the right: compose(x, y) is "first x, then y", so that
/// evaluate(compose(x, y), t) == evaluate(y, evaluate(x, t)).
/// The breakpoint list is kept in normal form (no two consecutive pieces
/// with the same slope), so equality is list equality.
class PLMap {
 public:
  /// Validates every invariant; throws NotInRing / ContractViolation.
  PLMap(GroupContext ctx, std::vector<Breakpoint> breakpoints);

  const GroupContext& context() const { return ctx_; }
  const std::vector<Breakpoint>& breakpoints() const { return bp_; }
  std::size_t piece_count() const { return bp_.size() - 1; }
  bool is_identity() const { return bp_.size() == 2; }

  /// Slope of piece i, between breakpoints i and i+1.
  Rational piece_slope(std::size_t i) const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

  /// Builds from an already-normal, already-valid breakpoint list.
  static PLMap from_trusted(GroupContext ctx, std::vector<Breakpoint> breakpoints);

 private:
  PLMap(GroupContext ctx, std::vector<Breakpoint> breakpoints, bool validate);

  GroupContext ctx_;
  std::vector<Breakpoint> bp_;
};

/// Drops interior breakpoints whose neighbouring slopes coincide.
std::vector<Breakpoint> normalize_breakpoints(std::vector<Breakpoint> bp);

PLMap identity(const GroupContext& ctx);
PLMap compose(const PLMap& x, const PLMap& y);
PLMap inverse(const PLMap& x);
PLMap power(const PLMap& x, std::int64_t m);
/// Product x_1 x_2 ... x_k (left to right).
PLMap product(const std::vector<PLMap>& factors);

Rational evaluate(const PLMap& x, const Rational& t);
/// Image of t under the inverse map.
Rational evaluate_inverse(const PLMap& x, const Rational& t);

Rational slope_right(const PLMap& x, const Rational& t);
Rational slope_left(const PLMap& x, const Rational& t);

/// Points moved by x, as maximal open intervals.
IntervalSet support(const PLMap& x);
/// Fixed points of x on [0; r] as maximal closed components (possibly points).
std::vector<ClosedInterval> fix_set(const PLMap& x);

/// g^-1 x g.
PLMap conjugate(const PLMap& x, const PLMap& g);
bool commutes(const PLMap& x, const PLMap& y);
/// x^-1 y^-1 x y.
PLMap commutator(const PLMap& x, const PLMap& y);

/// The fixed point lim_{m -> +inf} (t) x^m.
Rational limit_of_iterates(const PLMap& x, const Rational& t);

/// Conjugate of x by t -> t * (r'/r); result lives over [0; r').
PLMap rescale(const PLMap& x, const Rational& new_r);

/// Conjugate by the reflection t -> r - t (an automorphism of F that swaps
/// the roles of the two endpoints).
PLMap reflect(const PLMap& x);

/// Image of an interval set under x.
IntervalSet image(const IntervalSet& s, const PLMap& x);

/// (alpha)x >= alpha for every alpha.
bool moves_up(const PLMap& x);
/// (alpha)x <= alpha for every alpha.
bool moves_down(const PLMap& x);

std::string to_string(const PLMap& x);

}  // namespace thompson
