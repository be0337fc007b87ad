#include "thompson/pl_map.hpp"

#include <algorithm>
#include <sstream>

#include "thompson/error.hpp"

namespace thompson {

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet::IntervalSet(std::vector<OpenInterval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!(intervals_[i].lo < intervals_[i].hi)) throw ContractViolation("empty interval in IntervalSet");
    if (i > 0 && intervals_[i].lo < intervals_[i - 1].hi) {
      throw ContractViolation("IntervalSet intervals must be ordered and disjoint");
    }
  }
}

bool IntervalSet::contains(const Rational& t) const {
  return std::any_of(intervals_.begin(), intervals_.end(), [&](const OpenInterval& iv) { return iv.contains(t); });
}

bool IntervalSet::subset_of(const IntervalSet& other) const {
  for (const auto& iv : intervals_) {
    const bool inside = std::any_of(other.intervals_.begin(), other.intervals_.end(), [&](const OpenInterval& o) {
      return o.lo <= iv.lo && iv.hi <= o.hi;
    });
    if (!inside) return false;
  }
  return true;
}

bool IntervalSet::disjoint_from(const IntervalSet& other) const {
  for (const auto& a : intervals_) {
    for (const auto& b : other.intervals_) {
      if (a.lo < b.hi && b.lo < a.hi) return false;
    }
  }
  return true;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<OpenInterval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  std::sort(all.begin(), all.end(), [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  std::vector<OpenInterval> merged;
  for (auto& iv : all) {
    if (!merged.empty() && iv.lo < merged.back().hi) {
      merged.back().hi = max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(std::move(iv));
    }
  }
  return IntervalSet(std::move(merged));
}

std::string IntervalSet::to_string() const {
  if (intervals_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i > 0) out += " U ";
    out += "]" + intervals_[i].lo.to_string() + ";" + intervals_[i].hi.to_string() + "[";
  }
  return out;
}

// ---------------------------------------------------------------------------
// PLMap

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

/// Evaluates the increasing PL function with breakpoints `bp` at ascending
/// query points in one pass.
std::vector<Rational> evaluate_sorted(const std::vector<Breakpoint>& bp, const std::vector<Rational>& queries) {
  std::vector<Rational> out;
  out.reserve(queries.size());
  std::size_t i = 0;
  for (const auto& t : queries) {
    while (i + 2 < bp.size() && bp[i + 1].x < t) ++i;
    if (t == bp[i + 1].x) {
      out.push_back(bp[i + 1].y);
    } else if (t == bp[i].x) {
      out.push_back(bp[i].y);
    } else {
      out.push_back(bp[i].y + (t - bp[i].x) * (bp[i + 1].y - bp[i].y) / (bp[i + 1].x - bp[i].x));
    }
  }
  return out;
}

std::vector<Breakpoint> swapped(const std::vector<Breakpoint>& bp) {
  std::vector<Breakpoint> out;
  out.reserve(bp.size());
  for (const auto& p : bp) out.push_back({p.y, p.x});
  return out;
}

/// Index i with bp[i].x <= t < bp[i+1].x (t in [x_0, x_k)), or the last
/// piece when t == x_k.
std::size_t piece_index_right(const std::vector<Breakpoint>& bp, const Rational& t) {
  auto it = std::upper_bound(bp.begin(), bp.end(), t, [](const Rational& v, const Breakpoint& p) { return v < p.x; });
  std::size_t i = static_cast<std::size_t>(it - bp.begin());
  if (i == 0) return 0;
  i -= 1;
  return std::min(i, bp.size() - 2);
}

void require_same_context(const PLMap& x, const PLMap& y) {
  if (!(x.context() == y.context())) throw ContextMismatch();
}

void require_in_closed_interval(const PLMap& x, const Rational& t) {
  if (t.sign() < 0 || t > x.context().r()) {
    throw ContractViolation("point " + t.to_string() + " outside [0;" + x.context().r().to_string() + "]");
  }
}

}  // namespace

std::vector<Breakpoint> normalize_breakpoints(std::vector<Breakpoint> bp) {
  if (bp.size() <= 2) return bp;
  std::vector<Breakpoint> out;
  out.reserve(bp.size());
  out.push_back(std::move(bp.front()));
  for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
    if (!collinear(out.back(), bp[i], bp[i + 1])) out.push_back(std::move(bp[i]));
  }
  out.push_back(std::move(bp.back()));
  return out;
}

PLMap::PLMap(GroupContext ctx, std::vector<Breakpoint> breakpoints)
    : PLMap(std::move(ctx), std::move(breakpoints), true) {}

PLMap PLMap::from_trusted(GroupContext ctx, std::vector<Breakpoint> breakpoints) {
  return PLMap(std::move(ctx), normalize_breakpoints(std::move(breakpoints)), false);
}

PLMap::PLMap(GroupContext ctx, std::vector<Breakpoint> breakpoints, bool validate)
    : ctx_(std::move(ctx)), bp_(std::move(breakpoints)) {
  if (!validate) return;
  const Rational& r = ctx_.r();
  if (bp_.size() < 2) throw ContractViolation("a map needs at least the breakpoints (0,0) and (r,r)");
  if (!(bp_.front() == Breakpoint{0, 0})) throw ContractViolation("first breakpoint must be (0,0)");
  if (!(bp_.back() == Breakpoint{r, r})) throw ContractViolation("last breakpoint must be (r,r)");
  for (std::size_t i = 0; i < bp_.size(); ++i) {
    if (!in_A(bp_[i].x, ctx_) || !in_A(bp_[i].y, ctx_)) {
      throw NotInRing("breakpoint (" + bp_[i].x.to_string() + "," + bp_[i].y.to_string() + ") not in Z[1/" +
                      std::to_string(ctx_.n()) + "]");
    }
    if (i == 0) continue;
    if (!(bp_[i - 1].x < bp_[i].x) || !(bp_[i - 1].y < bp_[i].y)) {
      throw ContractViolation("breakpoints must be strictly increasing in both coordinates");
    }
    const Rational slope = (bp_[i].y - bp_[i - 1].y) / (bp_[i].x - bp_[i - 1].x);
    if (!log_slope(slope, ctx_)) {
      throw ContractViolation("slope " + slope.to_string() + " is not a power of " + std::to_string(ctx_.n()));
    }
  }
  bp_ = normalize_breakpoints(std::move(bp_));
}

Rational PLMap::piece_slope(std::size_t i) const { return (bp_[i + 1].y - bp_[i].y) / (bp_[i + 1].x - bp_[i].x); }

PLMap identity(const GroupContext& ctx) { return PLMap::from_trusted(ctx, {{0, 0}, {ctx.r(), ctx.r()}}); }

PLMap compose(const PLMap& x, const PLMap& y) {
  require_same_context(x, y);
  const auto& xb = x.breakpoints();
  const auto& yb = y.breakpoints();
  // Breakpoints of the composite sit over the union of x's image breakpoints
  // and y's domain breakpoints.
  std::vector<Rational> middle;
  middle.reserve(xb.size() + yb.size());
  std::size_t i = 0, j = 0;
  while (i < xb.size() || j < yb.size()) {
    if (j == yb.size() || (i < xb.size() && xb[i].y < yb[j].x)) {
      middle.push_back(xb[i++].y);
    } else if (i == xb.size() || yb[j].x < xb[i].y) {
      middle.push_back(yb[j++].x);
    } else {
      middle.push_back(xb[i].y);
      ++i;
      ++j;
    }
  }
  const auto pre = evaluate_sorted(swapped(xb), middle);
  const auto post = evaluate_sorted(yb, middle);
  std::vector<Breakpoint> out;
  out.reserve(middle.size());
  for (std::size_t k = 0; k < middle.size(); ++k) out.push_back({pre[k], post[k]});
  return PLMap::from_trusted(x.context(), std::move(out));
}

PLMap inverse(const PLMap& x) { return PLMap::from_trusted(x.context(), swapped(x.breakpoints())); }

PLMap power(const PLMap& x, std::int64_t m) {
  PLMap base = m < 0 ? inverse(x) : x;
  std::uint64_t e = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
  PLMap result = identity(x.context());
  while (e > 0) {
    if (e & 1U) result = compose(result, base);
    e >>= 1U;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

PLMap product(const std::vector<PLMap>& factors) {
  if (factors.empty()) throw ContractViolation("empty product needs a context");
  PLMap out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = compose(out, factors[i]);
  return out;
}

Rational evaluate(const PLMap& x, const Rational& t) {
  require_in_closed_interval(x, t);
  const auto& bp = x.breakpoints();
  const std::size_t i = piece_index_right(bp, t);
  if (t == bp[i].x) return bp[i].y;
  return bp[i].y + (t - bp[i].x) * x.piece_slope(i);
}

Rational evaluate_inverse(const PLMap& x, const Rational& t) { return evaluate(inverse(x), t); }

Rational slope_right(const PLMap& x, const Rational& t) {
  if (t.sign() < 0 || !(t < x.context().r())) throw ContractViolation("right slope needs 0 <= t < r");
  return x.piece_slope(piece_index_right(x.breakpoints(), t));
}

Rational slope_left(const PLMap& x, const Rational& t) {
  if (t.sign() <= 0 || t > x.context().r()) throw ContractViolation("left slope needs 0 < t <= r");
  const auto& bp = x.breakpoints();
  auto it = std::lower_bound(bp.begin(), bp.end(), t, [](const Breakpoint& p, const Rational& v) { return p.x < v; });
  // *it is the first breakpoint with x >= t; the piece to the left ends there.
  const auto i = static_cast<std::size_t>(it - bp.begin());
  return x.piece_slope(i - 1);
}

std::vector<ClosedInterval> fix_set(const PLMap& x) {
  const auto& bp = x.breakpoints();
  std::vector<ClosedInterval> parts;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const Rational d0 = bp[i].y - bp[i].x;
    const Rational d1 = bp[i + 1].y - bp[i + 1].x;
    if (d0.is_zero() && d1.is_zero()) {
      parts.push_back({bp[i].x, bp[i + 1].x});
      continue;
    }
    if (d0.is_zero()) parts.push_back({bp[i].x, bp[i].x});
    if (d1.is_zero()) parts.push_back({bp[i + 1].x, bp[i + 1].x});
    if (d0.sign() * d1.sign() < 0) {
      const Rational t = bp[i].x + d0 * (bp[i + 1].x - bp[i].x) / (d0 - d1);
      parts.push_back({t, t});
    }
  }
  std::sort(parts.begin(), parts.end(), [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  std::vector<ClosedInterval> merged;
  for (auto& p : parts) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      merged.back().hi = max(merged.back().hi, p.hi);
    } else {
      merged.push_back(std::move(p));
    }
  }
  return merged;
}

IntervalSet support(const PLMap& x) {
  const auto fixed = fix_set(x);
  std::vector<OpenInterval> out;
  for (std::size_t i = 0; i + 1 < fixed.size(); ++i) {
    if (fixed[i].hi < fixed[i + 1].lo) out.push_back({fixed[i].hi, fixed[i + 1].lo});
  }
  return IntervalSet(std::move(out));
}

PLMap conjugate(const PLMap& x, const PLMap& g) { return compose(compose(inverse(g), x), g); }

bool commutes(const PLMap& x, const PLMap& y) { return compose(x, y) == compose(y, x); }

PLMap commutator(const PLMap& x, const PLMap& y) {
  return compose(compose(inverse(x), inverse(y)), compose(x, y));
}

Rational limit_of_iterates(const PLMap& x, const Rational& t) {
  require_in_closed_interval(x, t);
  const Rational image = evaluate(x, t);
  if (image == t) return t;
  const auto fixed = fix_set(x);
  if (t < image) {
    for (const auto& c : fixed) {
      if (t < c.lo) return c.lo;
    }
  } else {
    for (auto it = fixed.rbegin(); it != fixed.rend(); ++it) {
      if (it->hi < t) return it->hi;
    }
  }
  throw ContractViolation("no fixed point in the direction of motion");  // unreachable: 0 and r are fixed
}

PLMap rescale(const PLMap& x, const Rational& new_r) {
  if (new_r.sign() <= 0) throw ContractViolation("rescale target must be positive");
  GroupContext target(x.context().n(), new_r);
  const Rational factor = new_r / x.context().r();
  std::vector<Breakpoint> out;
  out.reserve(x.breakpoints().size());
  for (const auto& p : x.breakpoints()) {
    Breakpoint q{p.x * factor, p.y * factor};
    if (!in_A(q.x, target) || !in_A(q.y, target)) {
      throw NotInRing("rescaled breakpoint (" + q.x.to_string() + "," + q.y.to_string() + ") leaves Z[1/" +
                      std::to_string(target.n()) + "]");
    }
    out.push_back(std::move(q));
  }
  return PLMap::from_trusted(target, std::move(out));
}

PLMap reflect(const PLMap& x) {
  const Rational& r = x.context().r();
  std::vector<Breakpoint> out;
  out.reserve(x.breakpoints().size());
  for (auto it = x.breakpoints().rbegin(); it != x.breakpoints().rend(); ++it) out.push_back({r - it->x, r - it->y});
  return PLMap::from_trusted(x.context(), std::move(out));
}

IntervalSet image(const IntervalSet& s, const PLMap& x) {
  std::vector<OpenInterval> out;
  for (const auto& iv : s.intervals()) out.push_back({evaluate(x, iv.lo), evaluate(x, iv.hi)});
  return IntervalSet(std::move(out));
}

bool moves_up(const PLMap& x) {
  return std::all_of(x.breakpoints().begin(), x.breakpoints().end(), [](const Breakpoint& p) { return p.y >= p.x; });
}

bool moves_down(const PLMap& x) {
  return std::all_of(x.breakpoints().begin(), x.breakpoints().end(), [](const Breakpoint& p) { return p.y <= p.x; });
}

std::string to_string(const PLMap& x) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < x.breakpoints().size(); ++i) {
    if (i > 0) os << ", ";
    os << "(" << x.breakpoints()[i].x << "," << x.breakpoints()[i].y << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace thompson
