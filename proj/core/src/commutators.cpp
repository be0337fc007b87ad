#include "thompson/commutators.hpp"

#include <algorithm>
#include <optional>

#include "thompson/arithmetic.hpp"
#include "thompson/constructions.hpp"
#include "thompson/error.hpp"

namespace thompson {

namespace {

/// Closed hull [lo; hi] of the support of x, or nullopt for the identity.
std::optional<ClosedInterval> support_hull(const PLMap& x) {
  const IntervalSet s = support(x);
  if (s.empty()) return std::nullopt;
  return ClosedInterval{s.intervals().front().lo, s.intervals().back().hi};
}

std::optional<ClosedInterval> hull_union(const std::optional<ClosedInterval>& a, const std::optional<ClosedInterval>& b) {
  if (!a) return b;
  if (!b) return a;
  return ClosedInterval{min(a->lo, b->lo), max(a->hi, b->hi)};
}

CommutatorPair trivial_pair(const GroupContext& ctx) { return {identity(ctx), identity(ctx)}; }

const GroupContext& context_of(const CommutatorPair& c) {
  if (!(c.x.context() == c.y.context())) throw ContextMismatch();
  return c.x.context();
}

}  // namespace

PLMap value(const CommutatorPair& c) { return commutator(c.x, c.y); }

PLMap value(const CommutatorList& list, const GroupContext& ctx) {
  PLMap out = identity(ctx);
  for (const auto& c : list) out = compose(out, value(c));
  return out;
}

Rational simplest_A_point(const GroupContext& ctx, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw ContractViolation("simplest_A_point needs lo < hi");
  const Rational mid = (lo + hi) / 2;
  mpz_class scale = 1;
  for (;;) {
    // Grid points k / scale with lo < k / scale < hi.
    const mpq_class lo_scaled = lo.raw() * scale;
    mpz_class first;
    mpz_fdiv_q(first.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
    first += 1;
    const Rational candidate(first, scale);
    if (candidate < hi) {
      const mpq_class mid_scaled = mid.raw() * scale;
      mpz_class near;
      mpz_fdiv_q(near.get_mpz_t(), mid_scaled.get_num_mpz_t(), mid_scaled.get_den_mpz_t());
      Rational best = candidate;
      for (mpz_class k = near - 1; k <= near + 2; ++k) {
        const Rational p(k, scale);
        if (!(lo < p && p < hi)) continue;
        if (abs(p - mid) < abs(best - mid) || (abs(p - mid) == abs(best - mid) && p < best)) best = p;
      }
      return best;
    }
    scale *= ctx.n();
  }
}

CommutatorPair squeeze_commutator(const CommutatorPair& c, const Rational& alpha2, const Rational& beta2) {
  const GroupContext& ctx = context_of(c);
  if (!(0 < alpha2 && alpha2 < beta2 && beta2 < ctx.r()) || !in_A(alpha2, ctx) || !in_A(beta2, ctx)) {
    throw ContractViolation("squeeze window must satisfy 0 < alpha2 < beta2 < r with endpoints in A");
  }
  const PLMap v = value(c);
  const auto hull = support_hull(v);
  if (!hull) return trivial_pair(ctx);
  if (!(alpha2 < hull->lo && hull->hi < beta2)) {
    throw ContractViolation("commutator support " + support(v).to_string() + " is not strictly inside ]" +
                            alpha2.to_string() + ";" + beta2.to_string() + "[");
  }
  // Inner window ]alpha1; beta1[ around the support, strictly inside the target.
  const Rational alpha1 = in_A(hull->lo, ctx) ? hull->lo : simplest_A_point(ctx, alpha2, hull->lo);
  const Rational beta1 = in_A(hull->hi, ctx) ? hull->hi : simplest_A_point(ctx, hull->hi, beta2);
  const Rational p = largest_squeeze_slope(ctx, alpha1, beta1, alpha2, beta2);
  const SqueezeMap s = squeeze_conjugator(ctx, alpha1, beta1, alpha2, beta2, p);
  CommutatorPair out{squeeze(c.x, s), squeeze(c.y, s)};
  if (!(value(out) == v)) throw Error("squeeze changed the commutator");
  return out;
}

CommutatorPair squeeze_to_F_circle(const CommutatorPair& c) {
  const GroupContext& ctx = context_of(c);
  const auto hull = support_hull(value(c));
  if (!hull) return trivial_pair(ctx);
  return squeeze_commutator(c, simplest_A_point(ctx, 0, hull->lo), simplest_A_point(ctx, hull->hi, ctx.r()));
}

CommutatorPair merge_disjoint(const CommutatorList& pairs, const GroupContext& ctx) {
  std::vector<std::pair<ClosedInterval, std::size_t>> hulls;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!(context_of(pairs[i]) == ctx)) throw ContextMismatch();
    if (auto h = hull_union(support_hull(pairs[i].x), support_hull(pairs[i].y))) hulls.emplace_back(*h, i);
  }
  std::sort(hulls.begin(), hulls.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (std::size_t i = 1; i < hulls.size(); ++i) {
    if (!(hulls[i - 1].first.hi < hulls[i].first.lo)) {
      throw ContractViolation("pairs " + std::to_string(hulls[i - 1].second) + " and " +
                              std::to_string(hulls[i].second) + " overlap");
    }
  }
  CommutatorPair out = trivial_pair(ctx);
  for (const auto& c : pairs) {
    out.x = compose(out.x, c.x);
    out.y = compose(out.y, c.y);
  }
  if (!(value(out) == value(pairs, ctx))) throw Error("merge_disjoint: commutator of the merged pair differs");
  return out;
}

ThreeToTwo three_to_two(const CommutatorPair& c1, const CommutatorPair& c2, const CommutatorPair& c3) {
  const GroupContext& ctx = context_of(c1);
  if (!(context_of(c2) == ctx) || !(context_of(c3) == ctx)) throw ContextMismatch();
  const PLMap v1 = value(c1);
  const PLMap v2 = value(c2);
  const PLMap v3 = value(c3);
  const PLMap target = product({v1, v2, v3});

  const auto all = hull_union(hull_union(support_hull(v1), support_hull(v2)), support_hull(v3));
  if (!all) {
    return ThreeToTwo{ctx.r() / 4, ctx.r() * 3 / 4, identity(ctx), {trivial_pair(ctx), trivial_pair(ctx)}};
  }
  const Rational alpha = simplest_A_point(ctx, 0, all->lo);
  const Rational beta = simplest_A_point(ctx, all->hi, ctx.r());

  const PLMap step = make_bump(ctx, 0, ctx.r(), ctx.n(), Rational(1, ctx.n()));
  PLMap b = step;
  while (!(evaluate(b, alpha) > beta)) b = compose(b, step);
  const PLMap b_inv = inverse(b);

  // Conjugated pairs: [x, y]^g = [x^g, y^g].
  const CommutatorPair c2b{conjugate(c2.x, b), conjugate(c2.y, b)};
  const CommutatorPair c3b{conjugate(c3.x, b_inv), conjugate(c3.y, b_inv)};

  // Supports now sit in order c3b < c1 < c2b; give each its own window.
  std::vector<std::pair<ClosedInterval, const CommutatorPair*>> parts;
  for (const CommutatorPair* c : {&c3b, &c1, &c2b}) {
    if (auto h = support_hull(value(*c))) parts.emplace_back(*h, c);
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!(parts[i - 1].first.hi < parts[i].first.lo)) throw Error("three_to_two: conjugated supports overlap");
  }
  CommutatorList squeezed;
  Rational left = simplest_A_point(ctx, 0, parts.front().first.lo);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Rational right;
    Rational next_left;
    if (i + 1 < parts.size()) {
      const Rational lo = parts[i].first.hi;
      const Rational hi = parts[i + 1].first.lo;
      const Rational mid = (lo + hi) / 2;
      right = simplest_A_point(ctx, lo, mid);
      next_left = simplest_A_point(ctx, mid, hi);
    } else {
      right = simplest_A_point(ctx, parts[i].first.hi, ctx.r());
    }
    squeezed.push_back(squeeze_commutator(*parts[i].second, left, right));
    left = next_left;
  }
  CommutatorPair first = merge_disjoint(squeezed, ctx);

  CommutatorPair second{compose(inverse(v2), conjugate(v3, b_inv)), b};
  second = squeeze_to_F_circle(second);

  if (!(compose(value(first), value(second)) == target)) throw Error("three_to_two: product identity failed");
  return ThreeToTwo{alpha, beta, b, {std::move(first), std::move(second)}};
}

std::array<CommutatorPair, 2> decompose_to_two(const CommutatorList& list) {
  if (list.empty()) throw ContractViolation("decompose_to_two needs a nonempty list");
  const GroupContext& ctx = context_of(list.front());
  const PLMap target = value(list, ctx);

  CommutatorList work;
  work.reserve(list.size());
  for (const auto& c : list) work.push_back(squeeze_to_F_circle(c));
  if (!(value(work, ctx) == target)) throw Error("decompose_to_two: rewriting into F-circle changed the product");

  while (work.size() > 2) {
    const std::size_t k = work.size();
    ThreeToTwo step = three_to_two(work[k - 3], work[k - 2], work[k - 1]);
    work.erase(work.end() - 3, work.end());
    work.push_back(std::move(step.pairs[0]));
    work.push_back(std::move(step.pairs[1]));
    if (!(value(work, ctx) == target)) throw Error("decompose_to_two: a rewrite step changed the product");
  }
  while (work.size() < 2) work.push_back(trivial_pair(ctx));
  return {std::move(work[0]), std::move(work[1])};
}

}  // namespace thompson
