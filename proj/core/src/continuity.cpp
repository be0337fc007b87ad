#include "thompson/continuity.hpp"

#include "thompson/constructions.hpp"
#include "thompson/error.hpp"
#include "thompson/random.hpp"

namespace thompson {

namespace {

PLBijection power(const PLBijection& v, std::int64_t m) {
  PLBijection base = m < 0 ? inverse(v) : v;
  PLBijection out = to_bijection(identity(v.context()));
  for (std::int64_t i = 0; i < (m < 0 ? -m : m); ++i) out = compose(out, base);
  return out;
}

PLBijection conjugate(const PLBijection& v, const PLBijection& g) { return compose(compose(inverse(g), v), g); }

Rational random_A_point(gen::Rng& rng, const GroupContext& ctx) {
  const std::int64_t grid = static_cast<std::int64_t>(ctx.n()) * ctx.n() * ctx.n();
  return ctx.r() * Rational(gen::uniform(rng, 1, grid - 1), grid);
}

void record(ContinuityReport& report, const PLBijection& f, bool commuting) {
  if (!commuting) return;
  ++report.commuting;
  if (!is_continuous(f)) {
    ++report.counterexamples;
    if (!report.first_counterexample) report.first_counterexample = to_string(f);
  }
}

}  // namespace

ContinuityReport full_bump_campaign(const GroupContext& ctx, std::uint64_t seed, std::size_t trials) {
  gen::Rng rng(seed);
  const PLBijection w = to_bijection(make_bump(ctx, 0, ctx.r(), ctx.n(), Rational(1, ctx.n())));
  const PLBijection z = compose(w, w);
  ContinuityReport report;
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::int64_t j = gen::uniform(rng, -4, 4);
    PLBijection f = w;
    switch (i % 5) {
      case 0:
        f = gen::random_V(rng, ctx);
        break;
      case 1:
        f = power(w, j);
        break;
      case 2:
        f = compose(power(w, j), gen::random_V(rng, ctx, 4));
        break;
      case 3:
        f = conjugate(power(w, j), gen::random_V(rng, ctx, 4));
        break;
      default:
        f = compose(power(w, j), rotation(ctx, random_A_point(rng, ctx)));
        break;
    }
    record(report, f, commutes(f, z));
  }
  return report;
}

ContinuityReport bump_family_campaign(const GroupContext& ctx, std::uint64_t seed, std::size_t trials) {
  const Rational half = ctx.r() / 2;
  if (!in_A(half, ctx)) throw ContractViolation("bump_family_campaign needs r/2 in A");
  gen::Rng rng(seed);
  const PLBijection swap = rotation(ctx, half);
  const PLBijection z1 = to_bijection(make_bump(ctx, 0, half, ctx.n(), Rational(1, ctx.n())));
  const PLBijection z2 = conjugate(z1, swap);
  const PLBijection both = compose(z1, z2);
  ContinuityReport report;
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::int64_t a = gen::uniform(rng, -3, 3);
    const std::int64_t b = gen::uniform(rng, -3, 3);
    PLBijection f = z1;
    switch (i % 4) {
      case 0:
        f = gen::random_V(rng, ctx);
        break;
      case 1:
        f = compose(power(z1, a), power(z2, b));
        break;
      case 2:
        f = compose(swap, power(both, a));
        break;
      default:
        f = conjugate(compose(power(z1, a), power(z2, b)), gen::random_V(rng, ctx, 4));
        break;
    }
    record(report, f, commutes(f, z1) && commutes(f, z2));
    if (commutes(f, both) && !is_continuous(f) && !(commutes(f, z1) && commutes(f, z2))) ++report.control_hits;
  }
  return report;
}

}  // namespace thompson
