#include <gtest/gtest.h>

#include "helpers.hpp"
#include "thompson/arithmetic.hpp"
#include "thompson/constructions.hpp"
#include "thompson/error.hpp"
#include "thompson/random.hpp"

namespace thompson {
namespace {

using test::F;
using test::q;

const GroupContext kF3(3, Rational(2));

TEST(Classify, Examples) {
  const SlopeClass id = classify(identity(F()));
  EXPECT_TRUE(id.in_F_circle());
  EXPECT_FALSE(id.in_E());
  const SlopeClass b = classify(encode_nat(F(), 1));
  EXPECT_TRUE(b.in_B());
  EXPECT_EQ(b.s0, 1);
  EXPECT_EQ(b.sr, 1);
  const SlopeClass x0 = classify(thompson_x0());
  EXPECT_EQ(x0.s0, 1);
  EXPECT_EQ(x0.sr, -1);
  EXPECT_TRUE(x0.in_U());
}

TEST(Classify, CommutatorsLieInFCircle) {
  gen::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const GroupContext& ctx = i % 2 ? F() : kF3;
    EXPECT_TRUE(classify(commutator(gen::random_map(rng, ctx), gen::random_map(rng, ctx))).in_F_circle());
  }
}

TEST(Classify, PredicatePartition) {
  gen::Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    const SlopeClass c = classify(gen::random_map(rng, i % 2 ? F() : kF3));
    EXPECT_NE(c.in_F_circle(), c.in_E());
    if (c.in_E2()) {
      EXPECT_TRUE(c.in_E());
    }
    EXPECT_FALSE(c.in_P_plus() && c.in_P_minus());
    if (c.in_U()) {
      EXPECT_TRUE(c.in_E2() && !c.in_P());
    }
    if (c.in_B()) {
      EXPECT_TRUE(c.in_P_plus());
    }
  }
}

TEST(SplitPoint, Defaults) {
  EXPECT_EQ(default_split_point(F()), q("1/2"));
  EXPECT_EQ(default_split_point(kF3), 1);
  // r/2 = 1/2 is not in Z[1/3]; 1/3 and 2/3 are equally near, the lower wins.
  EXPECT_EQ(default_split_point(GroupContext(3, 1)), q("1/3"));
}

TEST(Encode, RoundTripAndSlopes) {
  for (const GroupContext& ctx : {F(), kF3}) {
    for (std::int64_t k = 1; k <= 50; ++k) {
      const PLMap x = encode_nat(ctx, k);
      EXPECT_TRUE(classify(x).in_B());
      EXPECT_EQ(decode(x), k);
      if (k >= 2) {
        EXPECT_FALSE(classify(x).in_F_circle());
        EXPECT_FALSE(classify(x).in_U());
      }
    }
  }
  const PLMap one = encode_nat(F(), 1);
  EXPECT_EQ(slope_right(one, 0), 2);
  EXPECT_EQ(slope_left(one, 1), 2);
  EXPECT_THROW(encode_nat(F(), 0), ContractViolation);
  EXPECT_EQ(decode(encode_nat(F(), 4, q("1/4"))), 4);
}

TEST(Decode, Examples) {
  EXPECT_EQ(decode(encode_nat(F(), 7)), 7);
  EXPECT_EQ(decode(compose(encode_nat(F(), 2), encode_nat(F(), 3))), 5);
  EXPECT_THROW(decode(identity(F())), ContractViolation);
  EXPECT_THROW(decode(thompson_x0()), ContractViolation);
}

TEST(Decode, WellDefinedOnClasses) {
  gen::Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    // Equal decode iff x y^-1 lies in F-circle; vary the split point.
    const std::int64_t a = gen::uniform(rng, 1, 6), b = gen::uniform(rng, 1, 6);
    const PLMap x = encode_nat(F(), a, q("1/4"));
    const PLMap y = compose(encode_nat(F(), b, q("5/8")), gen::random_F_circle(rng, F()));
    EXPECT_EQ(decode(x) == decode(y), classify(compose(x, inverse(y))).in_F_circle());
  }
}

TEST(AddBridge, Examples) {
  const PLMap e2 = encode_nat(F(), 2), e3 = encode_nat(F(), 3);
  EXPECT_TRUE(add_bridge(e2, e3, encode_nat(F(), 5)));
  EXPECT_FALSE(add_bridge(e2, e3, encode_nat(F(), 6)));
  gen::Rng rng(44);
  for (int i = 0; i < 50; ++i) {
    const PLMap x = compose(encode_nat(F(), gen::uniform(rng, 1, 9)), gen::random_F_circle(rng, F()));
    const PLMap y = encode_nat(F(), gen::uniform(rng, 1, 9), q("3/8"));
    EXPECT_TRUE(add_bridge(x, y, compose(x, y)));
  }
  EXPECT_THROW(add_bridge(e2, identity(F()), e3), ContractViolation);
}

TEST(AddBridge, MatchesIntegerAddition) {
  for (std::int64_t i = 1; i <= 30; i += 3) {
    for (std::int64_t j = 1; j <= 30; j += 4) {
      const PLMap x = encode_nat(kF3, i), y = encode_nat(kF3, j);
      for (std::int64_t s = std::max<std::int64_t>(1, i + j - 2); s <= i + j + 2; ++s) {
        EXPECT_EQ(add_bridge(x, y, encode_nat(kF3, s)), s == i + j);
      }
    }
  }
}

TEST(DividesBridge, Examples) {
  const PLMap e3 = encode_nat(F(), 3), e12 = encode_nat(F(), 12);
  EXPECT_TRUE(divides_bridge(e3, e12));
  EXPECT_FALSE(divides_bridge(e3, encode_nat(F(), 13)));
  const auto w = divides_witness(e3, e12);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->quotient, 4);
  EXPECT_EQ(compose(e3, w->z), compose(w->x1, w->x2));
  EXPECT_TRUE(classify(w->z).in_F_circle());
  EXPECT_TRUE(commutes(w->w, compose(e3, w->z)));
  EXPECT_TRUE(classify(compose(e12, w->w)).in_F_circle());
  EXPECT_EQ(w->w, compose(power(w->x1, -4), power(w->x2, -4)));
  EXPECT_EQ(divides_witness(e3, encode_nat(F(), 13)), std::nullopt);
}

TEST(DividesBridge, SelfDivision) {
  // When x is already split (z = identity), the witness is x^-1.
  const PLMap x = encode_nat(F(), 5);
  const auto w = divides_witness(x, x);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->z.is_identity());
  EXPECT_EQ(w->w, inverse(x));
}

TEST(DividesBridge, MatchesIntegerDivisibility) {
  for (std::int64_t i = 1; i <= 30; ++i) {
    for (std::int64_t j = 1; j <= 30; j += 5) {
      EXPECT_EQ(divides_bridge(encode_nat(F(), i), encode_nat(F(), j)), j % i == 0) << i << " | " << j;
    }
  }
}

TEST(DividesBridge, LatticeRefutation) {
  EXPECT_TRUE(lattice_refutes_divisibility(encode_nat(F(), 3), encode_nat(F(), 13), 8));
  EXPECT_FALSE(lattice_refutes_divisibility(encode_nat(F(), 3), encode_nat(F(), 12), 8));
}

TEST(UCounterexample, Examples) {
  // s0 = 2, sr = -1.
  const PLMap x = compose(make_bump(F(), 0, q("1/2"), 4, q("1/2")), make_bump(F(), q("1/2"), 1, 2, q("1/2")));
  ASSERT_EQ(classify(x), (SlopeClass{2, -1}));
  const UCertificate c = u_counterexample(x, 6);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.symmetry, "none");
  EXPECT_EQ(c.pairs_checked, 13u * 13u * 13u * 13u);
  EXPECT_THROW(u_counterexample(thompson_x0()), ContractViolation);
  EXPECT_THROW(u_counterexample(identity(F())), ContractViolation);
  EXPECT_THROW(u_counterexample(encode_nat(F(), 2)), ContractViolation);
}

TEST(UCounterexample, Symmetries) {
  // s0 = -2, sr = 1: inverted.
  const PLMap x = inverse(compose(make_bump(F(), 0, q("1/2"), 4, q("1/2")), make_bump(F(), q("1/2"), 1, 2, q("1/2"))));
  const UCertificate c = u_counterexample(x, 3);
  EXPECT_EQ(c.symmetry, "inverse");
  EXPECT_TRUE(c.holds);
  // s0 = 1, sr = -2: reflected, then inverted.
  const PLMap y = compose(make_bump(F(), 0, q("1/2"), 2, q("1/2")), make_bump(F(), q("1/2"), 1, 2, q("1/4")));
  ASSERT_EQ(classify(y), (SlopeClass{1, -2}));
  const UCertificate d = u_counterexample(y, 3);
  EXPECT_EQ(d.symmetry, "reflect+inverse");
  EXPECT_TRUE(d.holds);
}

}  // namespace
}  // namespace thompson
