#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "thompson/arithmetic.hpp"
#include "thompson/constructions.hpp"
#include "thompson/error.hpp"
#include "thompson/map_io.hpp"
#include "thompson/pl_bijection.hpp"
#include "thompson/random.hpp"

namespace thompson {
namespace {

using test::F;
using test::map_of;
using test::q;

const GroupContext kF3(3, Rational(2));

TEST(PLMap, ValidatesInvariants) {
  EXPECT_NO_THROW(map_of(F(), {{"0", "0"}, {"1/2", "1/4"}, {"3/4", "1/2"}, {"1", "1"}}));
  // Slope 3/2 is not a power of 2.
  EXPECT_THROW(map_of(F(), {{"0", "0"}, {"1/2", "3/4"}, {"1", "1"}}), Error);
  // Breakpoint outside Z[1/2].
  EXPECT_THROW(map_of(F(), {{"0", "0"}, {"1/3", "1/3"}, {"1", "1"}}), Error);
  // Endpoints must be fixed.
  EXPECT_THROW(map_of(F(), {{"0", "0"}, {"1", "1/2"}}), Error);
  // Not increasing.
  EXPECT_THROW(map_of(F(), {{"0", "0"}, {"1/2", "1/2"}, {"1/2", "1/2"}, {"1", "1"}}), Error);
}

TEST(PLMap, NormalFormMergesEqualSlopes) {
  const PLMap x = map_of(F(), {{"0", "0"}, {"1/4", "1/4"}, {"1/2", "1/2"}, {"1", "1"}});
  EXPECT_TRUE(x.is_identity());
  EXPECT_EQ(x, identity(F()));
}

TEST(PLMap, GroupLawExamples) {
  const PLMap x0 = thompson_x0();
  EXPECT_EQ(compose(identity(F()), x0), x0);
  EXPECT_TRUE(compose(x0, inverse(x0)).is_identity());
  // a = x0^2 over the chosen x0: slope n^2 at 0, cross-checked with the chain rule.
  const PLMap a = power(x0, 2);
  EXPECT_EQ(slope_right(a, 0), Rational(4));
  EXPECT_EQ(slope_right(a, 0), slope_right(x0, 0) * slope_right(x0, evaluate(x0, 0)));
  EXPECT_EQ(power(x0, -2), inverse(a));
  EXPECT_TRUE(power(x0, 0).is_identity());
}

TEST(PLMap, EvaluateExamples) {
  EXPECT_EQ(evaluate(identity(F()), q("1/3")), q("1/3"));
  EXPECT_EQ(evaluate(thompson_x0(), q("1/2")), q("3/4"));
  EXPECT_EQ(evaluate(thompson_x0(), q("1/4")), q("1/2"));
  gen::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const PLMap x = gen::random_map(rng, F());
    EXPECT_EQ(evaluate(x, 1), 1);
    EXPECT_EQ(evaluate(x, 0), 0);
    const Rational t = q("5/7");
    EXPECT_EQ(evaluate_inverse(x, evaluate(x, t)), t);
  }
}

TEST(PLMap, RightActionConvention) {
  // compose(x, y) applies x first; the wrong convention breaks the support of b.
  const PLMap x0 = thompson_x0(), x1 = thompson_x1();
  const PLMap b = product({x1, inverse(x0), inverse(x1), x0});
  EXPECT_EQ(support(b), IntervalSet({{q("1/2"), q("7/8")}}));
  EXPECT_EQ(evaluate(compose(x0, x1), q("1/4")), evaluate(x1, evaluate(x0, q("1/4"))));
}

TEST(PLMap, SlopeExamples) {
  EXPECT_EQ(slope_right(identity(F()), 0), 1);
  const PLMap bump = make_bump(F(), q("1/4"), q("1/2"), 4, q("1/8"));
  EXPECT_EQ(slope_left(bump, q("1/2")), q("1/8"));
  EXPECT_EQ(slope_right(bump, q("1/4")), 4);
  EXPECT_EQ(slope_left(bump, q("1/4")), 1);
}

TEST(PLMap, ChainRuleOnRandomPairs) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const GroupContext& ctx = i % 2 ? F() : kF3;
    const PLMap f = gen::random_map(rng, ctx), g = gen::random_map(rng, ctx);
    const PLMap fg = compose(f, g);
    for (const auto& b : fg.breakpoints()) {
      if (b.x < ctx.r()) {
        EXPECT_EQ(slope_right(fg, b.x), slope_right(f, b.x) * slope_right(g, evaluate(f, b.x)));
      }
      if (b.x > 0) {
        EXPECT_EQ(slope_left(fg, b.x), slope_left(f, b.x) * slope_left(g, evaluate(f, b.x)));
      }
    }
  }
}

TEST(PLMap, SupportExamples) {
  EXPECT_TRUE(support(identity(F())).empty());
  EXPECT_EQ(support(thompson_x0()), IntervalSet({{0, 1}}));
  gen::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const PLMap f = gen::random_map(rng, i % 2 ? F() : kF3);
    for (std::int64_t m : {-3, -2, -1, 1, 2, 3}) EXPECT_EQ(support(power(f, m)), support(f));
  }
}

TEST(PLMap, FixSetComplementsSupport) {
  const PLMap x = compose(make_bump(F(), q("1/8"), q("1/4"), 2, q("1/2")),
                          make_bump(F(), q("1/2"), q("3/4"), 2, q("1/2")));
  const std::vector<ClosedInterval> expected = {
      {0, q("1/8")}, {q("1/4"), q("1/2")}, {q("3/4"), 1}};
  EXPECT_EQ(fix_set(x), expected);
}

TEST(PLMap, ConjugateExamples) {
  const PLMap x0 = thompson_x0();
  EXPECT_EQ(conjugate(x0, identity(F())), x0);
  EXPECT_TRUE(conjugate(identity(F()), x0).is_identity());
  const Generators gens = thompson_generators();
  for (std::int64_t k = -4; k <= 4; ++k) {
    EXPECT_EQ(support(conjugate(gens.b(), power(gens.a(), k))), IntervalSet({{gens.alpha(k), gens.alpha(k + 1)}}));
  }
}

TEST(PLMap, ConjugateSupportAndFixSet) {
  gen::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const PLMap x = gen::random_map(rng, F()), g = gen::random_map(rng, F());
    EXPECT_EQ(support(conjugate(x, g)), image(support(x), g));
    std::vector<ClosedInterval> moved;
    for (const auto& f : fix_set(x)) moved.push_back({evaluate(g, f.lo), evaluate(g, f.hi)});
    EXPECT_EQ(fix_set(conjugate(x, g)), moved);
  }
}

TEST(PLMap, CommutationExamples) {
  gen::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const PLMap x = gen::random_map(rng, F());
    EXPECT_TRUE(commutes(x, power(x, 5)));
    EXPECT_TRUE(commutator(x, identity(F())).is_identity());
  }
  const PLMap u = make_bump(F(), 0, q("1/4"), 2, q("1/2"));
  const PLMap v = make_down_bump(F(), q("1/2"), 1, q("1/4"), 2);
  EXPECT_TRUE(commutes(u, v));
  EXPECT_FALSE(commutes(thompson_x0(), thompson_x1()));
}

TEST(PLMap, CommutingMapsPermuteSupportIntervals) {
  gen::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const PLMap f = gen::random_F_circle(rng, F());
    const PLMap g = compose(power(f, gen::uniform(rng, -3, 3)), make_bump(F(), q("127/128"), 1, 2, q("1/2")));
    ASSERT_TRUE(commutes(f, g));
    const IntervalSet s = support(f);
    for (const auto& iv : s.intervals()) {
      const auto moved = image(IntervalSet({iv}), g).intervals().front();
      EXPECT_NE(std::find(s.intervals().begin(), s.intervals().end(), moved), s.intervals().end());
    }
  }
}

TEST(PLMap, LimitOfIterates) {
  EXPECT_EQ(limit_of_iterates(identity(F()), q("1/3")), q("1/3"));
  // The chosen x0 moves 1/2 up; the iterates approach 1.
  EXPECT_EQ(limit_of_iterates(thompson_x0(), q("1/2")), 1);
  EXPECT_EQ(limit_of_iterates(inverse(thompson_x0()), q("1/2")), 0);
  const PLMap bump = make_bump(F(), q("1/4"), q("1/2"), 2, q("1/2"));
  EXPECT_EQ(limit_of_iterates(bump, q("1/3")), q("1/2"));
  EXPECT_EQ(limit_of_iterates(bump, q("3/4")), q("3/4"));
}

TEST(PLMap, Rescale) {
  EXPECT_EQ(rescale(identity(F()), 2), identity(GroupContext(2, 2)));
  gen::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const PLMap x = gen::random_map(rng, F());
    const PLMap y = rescale(x, 2);
    EXPECT_EQ(rescale(y, 1), x);
    EXPECT_EQ(slope_right(y, 0), slope_right(x, 0));
    EXPECT_EQ(slope_left(y, 2), slope_left(x, 1));
  }
}

TEST(PLMap, ReflectSwapsEndpointSlopes) {
  const PLMap x0 = thompson_x0();
  const PLMap y = reflect(x0);
  EXPECT_EQ(slope_right(y, 0), slope_left(x0, 1));
  EXPECT_EQ(slope_left(y, 1), slope_right(x0, 0));
  EXPECT_EQ(reflect(y), x0);
}

TEST(PLMap, ContextMismatchIsAnError) {
  EXPECT_THROW(compose(thompson_x0(), identity(kF3)), ContextMismatch);
}

TEST(PLBijection, EveryMapIsContinuous) {
  gen::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const PLBijection v = to_bijection(gen::random_map(rng, i % 2 ? F() : kF3));
    EXPECT_TRUE(is_continuous(v));
    EXPECT_TRUE(is_circle_continuous(v));
    EXPECT_TRUE(discontinuities(v).empty());
  }
}

TEST(PLBijection, RotationIsCircleContinuousOnly) {
  const PLBijection rot = rotation(F(), q("1/4"));
  EXPECT_TRUE(is_circle_continuous(rot));
  EXPECT_FALSE(is_continuous(rot));
  EXPECT_EQ(discontinuities(rot), std::vector<Rational>{q("3/4")});
  EXPECT_EQ(evaluate(rot, q("7/8")), q("1/8"));
}

TEST(PLBijection, SwapIsNeither) {
  // Swap [0; 1/4) and [1/4; 1/2) by translation.
  const PLBijection swap = PLBijection::from_partitions(F(), {0, q("1/4"), q("1/2"), 1}, {0, q("1/4"), q("1/2"), 1},
                                                        {1, 0, 2});
  EXPECT_FALSE(is_continuous(swap));
  EXPECT_FALSE(is_circle_continuous(swap));
  EXPECT_EQ(evaluate(swap, q("1/8")), q("3/8"));
}

TEST(PLBijection, GroupAxioms) {
  gen::Rng rng(6);
  const PLBijection id = to_bijection(identity(F()));
  for (int i = 0; i < 200; ++i) {
    const PLBijection u = gen::random_V(rng, F()), v = gen::random_V(rng, F()), w = gen::random_V(rng, F());
    EXPECT_EQ(compose(compose(u, v), w), compose(u, compose(v, w)));
    EXPECT_EQ(compose(u, inverse(u)), id);
    EXPECT_EQ(compose(id, u), u);
    const Rational t = q("3/8");
    EXPECT_EQ(evaluate(compose(u, v), t), evaluate(v, evaluate(u, t)));
  }
}

TEST(PLMap, GroupAxiomsOnRandomWords) {
  gen::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const GroupContext& ctx = i % 2 ? F() : kF3;
    const PLMap x = gen::random_map(rng, ctx), y = gen::random_map(rng, ctx), z = gen::random_map(rng, ctx);
    EXPECT_EQ(compose(compose(x, y), z), compose(x, compose(y, z)));
    EXPECT_EQ(inverse(compose(x, y)), compose(inverse(y), inverse(x)));
    EXPECT_EQ(power(x, 3), product({x, x, x}));
  }
}

TEST(MapIO, RoundTrip) {
  gen::Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const PLMap x = gen::random_map(rng, i % 2 ? F() : kF3);
    std::stringstream s;
    write_map(s, x);
    EXPECT_EQ(read_map(s), x);
  }
}

TEST(MapIO, ReadsFixtureWithComments) {
  const PLMap x0 = read_map_file(THOMPSON_TEST_DATA_DIR "/maps/x0.map");
  EXPECT_EQ(x0, thompson_x0());
  EXPECT_EQ(read_map_file(THOMPSON_TEST_DATA_DIR "/maps/x1.map"), thompson_x1());
  EXPECT_TRUE(read_map_file(THOMPSON_TEST_DATA_DIR "/maps/id.map").is_identity());
}

TEST(MapIO, RejectsMalformedInput) {
  std::istringstream bad("2 1\n0 0\n1/2\n1 1\n");
  EXPECT_THROW(read_map(bad), Error);
  std::istringstream empty("");
  EXPECT_THROW(read_map(empty), Error);
}

TEST(MapIO, CsvAndSvg) {
  std::ostringstream csv;
  write_csv(csv, thompson_x0());
  EXPECT_EQ(csv.str(), "x,y\n0,0\n1/4,1/2\n1/2,3/4\n1,1\n");
  std::ostringstream svg;
  write_svg(svg, {thompson_x0(), thompson_x1()});
  const std::string text = svg.str();
  EXPECT_NE(text.find("<svg"), std::string::npos);
  std::size_t polylines = 0;
  for (auto p = text.find("<polyline"); p != std::string::npos; p = text.find("<polyline", p + 1)) ++polylines;
  EXPECT_EQ(polylines, 2u);
}

}  // namespace
}  // namespace thompson
