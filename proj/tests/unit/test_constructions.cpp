#include <gtest/gtest.h>

#include "helpers.hpp"
#include "thompson/arithmetic.hpp"
#include "thompson/constructions.hpp"
#include "thompson/error.hpp"
#include "thompson/random.hpp"

namespace thompson {
namespace {

using test::F;
using test::map_of;
using test::q;

const GroupContext kF3(3, Rational(2));

TEST(MakeBump, FivePieceExample) {
  const PLMap x = make_bump(F(), 0, 1, 2, q("1/2"));
  const std::vector<std::pair<const char*, const char*>> cuts = {
      {"0", "0"}, {"1/8", "1/4"}, {"3/16", "3/8"}, {"5/8", "13/16"}, {"7/8", "15/16"}, {"1", "1"}};
  for (const auto& [t, v] : cuts) EXPECT_EQ(evaluate(x, q(t)), q(v));
  // Normal form merges the equal-slope pairs (2, 2) and (1/2, 1/2).
  EXPECT_EQ(x, map_of(F(), {{"0", "0"}, {"3/16", "3/8"}, {"5/8", "13/16"}, {"1", "1"}}));
  EXPECT_EQ(slope_right(x, q("1/16")), 2);
  EXPECT_EQ(slope_right(x, q("1/8")), 2);
  EXPECT_EQ(slope_right(x, q("1/4")), 1);
  EXPECT_EQ(slope_right(x, q("3/4")), q("1/2"));
}

TEST(MakeBump, GridOfSlopesAndWindows) {
  for (const GroupContext& ctx : {F(), kF3}) {
    const Rational r = ctx.r();
    const Rational n = ctx.n();
    const std::vector<std::pair<Rational, Rational>> windows = {
        {0, r}, {0, r / n}, {r / n, r}, {r / (n * n), r / n}, {r / (n * n), r - r / (n * n)}};
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const Rational p = power_of_n(ctx, i), qq = power_of_n(ctx, -j);
        for (const auto& [lo, hi] : windows) {
          const PLMap x = make_bump(ctx, lo, hi, p, qq);
          EXPECT_EQ(support(x), IntervalSet({{lo, hi}}));
          EXPECT_EQ(slope_right(x, lo), p);
          EXPECT_EQ(slope_left(x, hi), qq);
          EXPECT_TRUE(moves_up(x));
          for (const auto& b : x.breakpoints()) {
            EXPECT_TRUE(in_A(b.x, ctx));
            EXPECT_TRUE(in_A(b.y, ctx));
          }
          for (std::size_t k = 0; k < x.piece_count(); ++k) EXPECT_TRUE(log_slope(x.piece_slope(k), ctx));
        }
      }
    }
  }
}

TEST(MakeBump, Preconditions) {
  EXPECT_THROW(make_bump(F(), q("1/2"), q("1/4"), 2, q("1/2")), ContractViolation);
  EXPECT_THROW(make_bump(F(), 0, 1, 3, q("1/2")), ContractViolation);
  EXPECT_THROW(make_bump(F(), 0, 1, q("1/2"), 2), ContractViolation);
  EXPECT_THROW(make_bump(F(), 0, q("1/3"), 2, q("1/2")), NotInRing);
}

TEST(MakeDownBump, InverseAndCommutation) {
  const PLMap up = make_bump(F(), 0, 1, 2, q("1/2"));
  const PLMap down = inverse(up);
  EXPECT_EQ(slope_right(down, 0), q("1/2"));
  EXPECT_EQ(slope_left(down, 1), 2);
  EXPECT_EQ(support(down), support(up));
  EXPECT_EQ(make_down_bump(F(), 0, 1, q("1/2"), 2), down);
  EXPECT_TRUE(moves_down(down));
  EXPECT_TRUE(commutes(make_bump(F(), 0, q("1/4"), 4, q("1/2")), make_down_bump(F(), q("1/2"), q("3/4"), q("1/4"), 2)));
}

TEST(SlopeHomomorphism, AtLeftEndOfWindow) {
  gen::Rng rng(21);
  const Rational alpha = q("1/4"), beta = q("3/4");
  for (int i = 0; i < 100; ++i) {
    // Products of bumps inside ]alpha; beta[ with a common left end.
    const PLMap x = power(make_bump(F(), alpha, beta, 2, q("1/4")), gen::uniform(rng, -3, 3));
    const PLMap y = power(make_bump(F(), alpha, q("1/2"), 8, q("1/2")), gen::uniform(rng, -3, 3));
    EXPECT_EQ(slope_right(compose(x, y), alpha), slope_right(x, alpha) * slope_right(y, alpha));
  }
}

TEST(Generators, SimpleInstance) {
  const Generators g = make_generators(F(), q("1/2"), 1, 1);
  EXPECT_EQ(g.a(), g.c());
  EXPECT_EQ(g.b(), g.d());
  EXPECT_EQ(support(g.b()), IntervalSet({{q("1/2"), evaluate(g.a(), q("1/2"))}}));
  EXPECT_EQ(g.alpha(1), evaluate(g.a(), q("1/2")));
}

TEST(Generators, LadderMonotoneWithEndpointLimits) {
  for (const Generators& g : {thompson_generators(), make_generators(kF3, 1, 2, 1), default_generators(kF3)}) {
    const Rational r = g.context().r();
    for (std::int64_t k = -20; k < 20; ++k) {
      EXPECT_LT(g.alpha(k), g.alpha(k + 1));
      EXPECT_GT(g.alpha(k), 0);
      EXPECT_LT(g.alpha(k + 1), r);
    }
    EXPECT_EQ(limit_of_iterates(g.a(), g.alpha0()), r);
    EXPECT_EQ(limit_of_iterates(inverse(g.a()), g.alpha0()), 0);
  }
}

TEST(Generators, ThompsonAnchors) {
  const Generators g = thompson_generators();
  EXPECT_EQ(g.a(), power(thompson_x0(), 2));
  EXPECT_EQ(g.alpha(-1), q("1/8"));
  EXPECT_EQ(g.alpha(0), q("1/2"));
  EXPECT_EQ(g.alpha(1), q("7/8"));
  for (std::int64_t k = -5; k <= 5; ++k) {
    const Rational expected = k < 0 ? power_of_n(F(), -1 + 2 * k) : 1 - power_of_n(F(), -1 - 2 * k);
    EXPECT_EQ(g.alpha(k), expected) << "k = " << k;
  }
}

TEST(Generators, ConjugatesHaveDisjointSupports) {
  const Generators g = thompson_generators();
  for (std::int64_t i = -4; i <= 4; ++i) {
    EXPECT_EQ(g.b_conjugate(i), conjugate(g.b(), power(g.a(), i)));
    for (std::int64_t j = i + 1; j <= 4; ++j) {
      EXPECT_TRUE(support(g.b_conjugate(i)).disjoint_from(support(g.b_conjugate(j))));
      EXPECT_TRUE(commutes(g.b_conjugate(i), g.b_conjugate(j)));
    }
  }
}

TEST(Squeeze, ConjugatorShape) {
  const Rational a1 = q("1/4"), b1 = q("1/2"), a2 = q("1/8"), b2 = q("3/4");
  const Rational p = largest_squeeze_slope(F(), a1, b1, a2, b2);
  const SqueezeMap s = squeeze_conjugator(F(), a1, b1, a2, b2, p);
  EXPECT_EQ(s(q("1/3")), q("1/3"));
  EXPECT_EQ(s(a1), a1);
  EXPECT_EQ(s(b1), b1);
  EXPECT_EQ(s.image_lo(), a1 * (1 - p));
  EXPECT_GT(s.image_lo(), a2);
  EXPECT_LT(s.image_hi(), b2);
  // The next larger power of n violates the containment.
  EXPECT_THROW(squeeze_conjugator(F(), a1, b1, a2, b2, p * 2), ContractViolation);
  EXPECT_THROW(squeeze_conjugator(F(), a2, b1, a1, b2, p), ContractViolation);
}

TEST(Squeeze, EndomorphismFixingTheInnerWindow) {
  const Rational a1 = q("1/4"), b1 = q("1/2"), a2 = q("1/8"), b2 = q("3/4");
  const SqueezeMap s = squeeze_conjugator(F(), a1, b1, a2, b2, largest_squeeze_slope(F(), a1, b1, a2, b2));
  EXPECT_TRUE(squeeze(identity(F()), s).is_identity());
  const PLMap inner = make_bump(F(), q("5/16"), q("7/16"), 2, q("1/2"));
  EXPECT_EQ(squeeze(inner, s), inner);
  gen::Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const PLMap x = gen::random_map(rng, F()), y = gen::random_map(rng, F());
    EXPECT_EQ(squeeze(compose(x, y), s), compose(squeeze(x, s), squeeze(y, s)));
    EXPECT_EQ(squeeze(commutator(x, y), s), commutator(squeeze(x, s), squeeze(y, s)));
    EXPECT_TRUE(support(squeeze(x, s)).subset_of(IntervalSet({{a2, b2}})));
  }
}

}  // namespace
}  // namespace thompson
