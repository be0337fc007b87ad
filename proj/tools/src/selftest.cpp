#include <algorithm>
#include <atomic>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "thompson/arithmetic.hpp"
#include "thompson/cli/cli.hpp"
#include "thompson/commutators.hpp"
#include "thompson/constructions.hpp"
#include "thompson/continuity.hpp"
#include "thompson/error.hpp"
#include "thompson/logic/interpretation.hpp"
#include "thompson/logic/structure.hpp"
#include "thompson/random.hpp"
#include "thompson/wreath.hpp"

namespace thompson::cli {

namespace {

using gen::Rng;

CheckResult pass(std::string detail) { return {true, std::move(detail)}; }
CheckResult fail(std::string detail) { return {false, std::move(detail)}; }

std::string count(std::size_t k, std::string_view what) { return std::to_string(k) + " " + std::string(what); }

const GroupContext kF = GroupContext::thompson();
const GroupContext kF3(3, Rational(2));

/// Alternates the Thompson context with n = 3, r = 2.
const GroupContext& context_for(std::size_t i) { return i % 2 == 0 ? kF : kF3; }

CheckResult alpha_ladder(std::uint64_t, std::size_t) {
  const Generators gens = thompson_generators();
  if (support(thompson_x0()) != IntervalSet({{0, 1}})) return fail("support(x0) = " + support(thompson_x0()).to_string());
  for (std::int64_t k = -5; k <= 5; ++k) {
    const Rational expected = k < 0 ? power_of_n(kF, -1 + 2 * k) : 1 - power_of_n(kF, -1 - 2 * k);
    if (gens.alpha(k) != expected) return fail("alpha_" + std::to_string(k) + " = " + gens.alpha(k).to_string());
    const IntervalSet s = support(gens.b_conjugate(k));
    if (s != IntervalSet({{gens.alpha(k), gens.alpha(k + 1)}})) {
      return fail("supp(b_" + std::to_string(k) + ") = " + s.to_string());
    }
  }
  return pass("alpha_k exact for |k| <= 5");
}

CheckResult group_axioms(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const GroupContext& ctx = context_for(i);
    const PLMap x = gen::random_map(rng, ctx), y = gen::random_map(rng, ctx), z = gen::random_map(rng, ctx);
    if (compose(compose(x, y), z) != compose(x, compose(y, z))) return fail("associativity: " + to_string(x));
    if (!compose(x, inverse(x)).is_identity() || !compose(inverse(x), x).is_identity()) {
      return fail("inverse: " + to_string(x));
    }
    if (compose(x, identity(ctx)) != x) return fail("identity: " + to_string(x));
    const Rational t = evaluate(z, ctx.r() / ctx.n());
    if (evaluate(compose(x, y), t) != evaluate(y, evaluate(x, t))) return fail("right action: " + to_string(x));
  }
  return pass(count(trials, "triples"));
}

CheckResult chain_rule(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  std::size_t points = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const GroupContext& ctx = context_for(i);
    const PLMap x = gen::random_map(rng, ctx), y = gen::random_map(rng, ctx);
    const PLMap xy = compose(x, y);
    std::vector<Rational> ts;
    for (const auto& b : x.breakpoints()) ts.push_back(b.x);
    for (const auto& b : xy.breakpoints()) ts.push_back(b.x);
    for (const auto& b : y.breakpoints()) ts.push_back(evaluate_inverse(x, b.x));
    for (const auto& t : ts) {
      ++points;
      const Rational u = evaluate(x, t);
      if (t < ctx.r() && slope_right(xy, t) != slope_right(x, t) * slope_right(y, u)) {
        return fail("right slope at " + t.to_string() + " of " + to_string(x));
      }
      if (t > 0 && slope_left(xy, t) != slope_left(x, t) * slope_left(y, u)) {
        return fail("left slope at " + t.to_string() + " of " + to_string(x));
      }
    }
  }
  return pass(count(points, "breakpoints"));
}

CheckResult conjugate_support(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const GroupContext& ctx = context_for(i);
    const PLMap x = gen::random_map(rng, ctx), g = gen::random_map(rng, ctx);
    const PLMap c = conjugate(x, g);
    if (support(c) != image(support(x), g)) return fail("support of conjugate: " + to_string(x));
    std::vector<ClosedInterval> moved;
    for (const auto& f : fix_set(x)) moved.push_back({evaluate(g, f.lo), evaluate(g, f.hi)});
    if (fix_set(c) != moved) return fail("fix of conjugate: " + to_string(x));
  }
  return pass(count(trials, "pairs"));
}

CheckResult commuting_permutes_support(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const GroupContext& ctx = context_for(i);
    const PLMap f = gen::random_F_circle(rng, ctx);
    PLMap g = power(f, gen::uniform(rng, -3, 3));
    // A bump outside the support of f also commutes with it.
    const Rational last = f.breakpoints()[f.breakpoints().size() - 2].x;
    if (last > 0) g = compose(g, make_bump(ctx, last, ctx.r(), ctx.n(), Rational(1, ctx.n())));
    if (!commutes(f, g)) return fail("expected commuting pair: " + to_string(f));
    const IntervalSet s = support(f);
    for (const auto& piece : s.intervals()) {
      const IntervalSet moved = image(IntervalSet({piece}), g);
      if (std::find(s.intervals().begin(), s.intervals().end(), moved.intervals().front()) == s.intervals().end()) {
        return fail("support interval not permuted: " + to_string(f));
      }
      ++checked;
    }
  }
  return pass(count(checked, "support intervals"));
}

CheckResult power_support(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const PLMap x = gen::random_map(rng, context_for(i));
    for (std::int64_t m : {-3, -2, -1, 1, 2, 3}) {
      if (support(power(x, m)) != support(x)) return fail("m = " + std::to_string(m) + ": " + to_string(x));
    }
  }
  return pass(count(trials, "maps"));
}

CheckResult continuity_classes(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const GroupContext& ctx = context_for(i);
    const PLBijection v = to_bijection(gen::random_map(rng, ctx));
    if (!is_continuous(v) || !is_circle_continuous(v)) return fail("F element not continuous: " + to_string(v));
    const PLBijection w = gen::random_V(rng, ctx);
    if (compose(w, inverse(w)) != to_bijection(identity(ctx))) return fail("V inverse: " + to_string(w));
  }
  const PLBijection rot = rotation(kF, Rational(1, 4));
  if (!is_circle_continuous(rot) || is_continuous(rot)) return fail("rotation by 1/4 misclassified");
  return pass(count(trials, "maps"));
}

CheckResult bump_grid(std::uint64_t, std::size_t) {
  std::size_t built = 0;
  for (const GroupContext& ctx : {kF, kF3}) {
    const Rational r = ctx.r();
    const std::vector<std::pair<Rational, Rational>> windows = {
        {0, r}, {0, r / ctx.n()}, {r / ctx.n(), r}, {r / (ctx.n() * ctx.n()), r / ctx.n()},
        {r * Rational(1, ctx.n() * ctx.n()), r - r * Rational(1, ctx.n() * ctx.n())}};
    for (std::int64_t i = 1; i <= 3; ++i) {
      for (std::int64_t j = 1; j <= 3; ++j) {
        const Rational p = power_of_n(ctx, i), q = power_of_n(ctx, -j);
        for (const auto& [lo, hi] : windows) {
          const PLMap x = make_bump(ctx, lo, hi, p, q);
          if (support(x) != IntervalSet({{lo, hi}}) || slope_right(x, lo) != p || slope_left(x, hi) != q ||
              !moves_up(x)) {
            return fail("make_bump(" + lo.to_string() + ", " + hi.to_string() + ", " + p.to_string() + ", " +
                        q.to_string() + ")");
          }
          ++built;
        }
      }
    }
  }
  return pass(count(built, "bumps"));
}

CheckResult squeeze_homomorphism(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  const Rational a1(1, 4), b1(1, 2), a2(1, 8), b2(3, 4);
  const SqueezeMap s = squeeze_conjugator(kF, a1, b1, a2, b2, largest_squeeze_slope(kF, a1, b1, a2, b2));
  for (std::size_t i = 0; i < trials; ++i) {
    const PLMap u = gen::random_map(rng, kF), v = gen::random_map(rng, kF);
    if (squeeze(compose(u, v), s) != compose(squeeze(u, s), squeeze(v, s))) return fail("u = " + to_string(u));
    if (!classify(squeeze(u, s)).in_F_circle()) return fail("image not in F-circle: " + to_string(u));
  }
  return pass(count(trials, "pairs"));
}

CheckResult wreath_round_trip(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  const Generators gens = thompson_generators();
  for (std::size_t i = 0; i < trials; ++i) {
    const WreathElement u = gen::random_normal_form(rng);
    const PLMap x = embed(u, gens);
    const auto back = wreath_decompose(x, gens);
    if (!back || *back != u) return fail("round trip of " + u.to_string());
    if (x.is_identity() != u.is_identity()) return fail("identity test of " + u.to_string());
  }
  return pass(count(trials, "normal forms"));
}

CheckResult wreath_words(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  const Generators gens = thompson_generators();
  for (std::size_t i = 0; i < trials; ++i) {
    const std::string word = gen::random_word(rng, static_cast<std::size_t>(gen::uniform(rng, 0, 12)));
    std::vector<PLMap> letters;
    for (char ch : word) {
      if (ch == 'a') letters.push_back(gens.a());
      if (ch == 'A') letters.push_back(inverse(gens.a()));
      if (ch == 'b') letters.push_back(gens.b());
      if (ch == 'B') letters.push_back(inverse(gens.b()));
    }
    const PLMap x = letters.empty() ? identity(kF) : product(letters);
    if (embed(w_from_word(word), gens) != x) return fail("word \"" + word + "\"");
  }
  return pass(count(trials, "words"));
}

CheckResult wreath_cosets(std::uint64_t, std::size_t) {
  for (std::int64_t m = -12; m <= 12; ++m) {
    for (std::int64_t k = -12; k <= 12; ++k) {
      const bool divides = m == 0 ? k == 0 : k % m == 0;
      if (in_H_coset_of_centralizer(WreathElement::a_power(k), m) != divides) {
        return fail("m = " + std::to_string(m) + ", k = " + std::to_string(k));
      }
    }
  }
  return pass("625 pairs");
}

CheckResult wreath_multiplication(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::int64_t k = gen::uniform(rng, -30, 30), l = gen::uniform(rng, -30, 30);
    if (mul_from_add_div(k, l) != k * l) return fail(std::to_string(k) + " * " + std::to_string(l));
  }
  for (std::int64_t k = 0; k <= 1000; ++k) {
    const auto sq = four_squares(k);
    if (sq[0] * sq[0] + sq[1] * sq[1] + sq[2] * sq[2] + sq[3] * sq[3] != k) return fail("four squares " + std::to_string(k));
  }
  return pass(count(trials, "products"));
}

CheckResult arith_add(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const GroupContext& ctx = context_for(i);
    const std::int64_t a = gen::uniform(rng, 1, 20), b = gen::uniform(rng, 1, 20);
    const PLMap x = encode_nat(ctx, a), y = encode_nat(ctx, b);
    if (decode(x) != a) return fail("decode(encode " + std::to_string(a) + ")");
    if (!add_bridge(x, y, encode_nat(ctx, a + b))) return fail(std::to_string(a) + " + " + std::to_string(b));
    if (add_bridge(x, y, encode_nat(ctx, a + b + 1))) {
      return fail(std::to_string(a) + " + " + std::to_string(b) + " accepted off by one");
    }
  }
  return pass(count(trials, "sums"));
}

CheckResult arith_divides(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  std::size_t witnesses = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::int64_t a = gen::uniform(rng, 1, 12), b = gen::uniform(rng, 1, 24);
    const PLMap x = encode_nat(kF, a), y = encode_nat(kF, b);
    const bool expected = b % a == 0;
    if (divides_bridge(x, y) != expected) return fail(std::to_string(a) + " | " + std::to_string(b));
    if (expected) {
      const auto w = divides_witness(x, y);
      if (!w || w->quotient != b / a) return fail("witness for " + std::to_string(a) + " | " + std::to_string(b));
      ++witnesses;
    }
  }
  return pass(count(trials, "pairs") + ", " + count(witnesses, "witnesses"));
}

CheckResult interp_reduction(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  const logic::Signature gamma{{{"E", 2}, {"P", 1}}, {}};
  const logic::Signature sigma{{{"R", 2}, {"Q", 1}}, {}};
  std::size_t true_count = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const int universe = static_cast<int>(gen::uniform(rng, 1, 4));
    const int dim = static_cast<int>(gen::uniform(rng, 1, 2));
    const logic::FiniteStructure n = gen::random_structure(rng, gamma, universe);
    const logic::InterpretationData data = gen::random_admissible_interpretation(rng, n, sigma, dim);
    const logic::Formula alpha = gen::random_sentence(rng, sigma, 3);
    const bool direct = logic::evaluate(logic::quotient(n, data), alpha);
    if (direct != logic::reduced_holds(n, alpha, data)) return fail("sentence " + logic::render(alpha));
    true_count += direct;
  }
  return pass(count(trials, "instances") + ", " + count(true_count, "true"));
}

CheckResult commutator_decomposition(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  const std::size_t lists = std::max<std::size_t>(1, trials / 20);
  for (std::size_t i = 0; i < lists; ++i) {
    const auto length = static_cast<std::size_t>(gen::uniform(rng, 3, 6));
    const CommutatorList list = gen::random_commutator_list(rng, kF, length);
    const auto two = decompose_to_two(list);
    for (const auto& c : two) {
      if (!classify(c.x).in_F_circle() || !classify(c.y).in_F_circle()) return fail("entry outside F-circle");
    }
    if (compose(value(two[0]), value(two[1])) != value(list, kF)) return fail("product mismatch");
  }
  return pass(count(lists, "lists"));
}

CheckResult continuity_full_bump(std::uint64_t seed, std::size_t trials) {
  const ContinuityReport r = full_bump_campaign(kF, seed, trials);
  const std::string detail = count(r.trials, "candidates") + ", " + count(r.commuting, "commuting") + ", " +
                             count(r.counterexamples, "discontinuous");
  return r.holds() ? pass(detail) : fail(detail + ": " + r.first_counterexample.value_or(""));
}

CheckResult continuity_bump_family(std::uint64_t seed, std::size_t trials) {
  const ContinuityReport r = bump_family_campaign(kF, seed, trials);
  const std::string detail = count(r.trials, "candidates") + ", " + count(r.commuting, "commuting") + ", " +
                             count(r.counterexamples, "discontinuous") + ", " +
                             count(r.control_hits, "control hits");
  if (!r.holds()) return fail(detail + ": " + r.first_counterexample.value_or(""));
  if (r.control_hits == 0 && trials >= 4) return fail(detail + ": control never fired");
  return pass(detail);
}

}  // namespace

const std::vector<Check>& selftest_checks() {
  static const std::vector<Check> checks = [] {
    std::vector<Check> out = {
        {"anchor.alpha_ladder", alpha_ladder},
        {"arith.add_bridge", arith_add},
        {"arith.divides_bridge", arith_divides},
        {"commutators.decompose_to_two", commutator_decomposition},
        {"constructions.bump_grid", bump_grid},
        {"constructions.squeeze_homomorphism", squeeze_homomorphism},
        {"continuity.bump_family", continuity_bump_family},
        {"continuity.full_bump", continuity_full_bump},
        {"folog.reduction", interp_reduction},
        {"plmaps.chain_rule", chain_rule},
        {"plmaps.commuting_permutes_support", commuting_permutes_support},
        {"plmaps.conjugate_support", conjugate_support},
        {"plmaps.continuity_classes", continuity_classes},
        {"plmaps.group_axioms", group_axioms},
        {"plmaps.power_support", power_support},
        {"wreath.cosets", wreath_cosets},
        {"wreath.multiplication", wreath_multiplication},
        {"wreath.round_trip", wreath_round_trip},
        {"wreath.words", wreath_words},
    };
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return out;
  }();
  return checks;
}

std::uint64_t check_seed(std::uint64_t seed, std::string_view name) {
  // FNV-1a over the name, then one splitmix64 round with the seed.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<CheckOutcome> run_selftest(std::uint64_t seed, std::size_t trials, unsigned threads,
                                       std::string_view filter) {
  std::vector<const Check*> selected;
  for (const auto& c : selftest_checks()) {
    if (c.name.starts_with(filter)) selected.push_back(&c);
  }
  std::vector<CheckOutcome> outcomes(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < selected.size();) {
      const Check& c = *selected[i];
      outcomes[i].name = c.name;
      try {
        outcomes[i].result = c.run(check_seed(seed, c.name), trials);
      } catch (const std::exception& e) {
        outcomes[i].result = fail(std::string("exception: ") + e.what());
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, selected.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return outcomes;
}

void write_report(std::ostream& out, const std::vector<CheckOutcome>& outcomes) {
  std::size_t passed = 0;
  for (const auto& o : outcomes) {
    out << "CHECK " << o.name << (o.result.pass ? " PASS " : " FAIL ") << o.result.detail << '\n';
    passed += o.result.pass;
  }
  out << "SUMMARY " << passed << "/" << outcomes.size() << " passed\n";
}

}  // namespace thompson::cli
