#include <benchmark/benchmark.h>

#include "thompson/commutators.hpp"
#include "thompson/constructions.hpp"
#include "thompson/logic/interpretation.hpp"
#include "thompson/random.hpp"
#include "thompson/wreath.hpp"

namespace {

using namespace thompson;

void BM_Compose(benchmark::State& state) {
  gen::Rng rng(1);
  const GroupContext ctx = GroupContext::thompson();
  const auto leaves = static_cast<std::size_t>(state.range(0));
  const PLMap x = gen::random_map(rng, ctx, leaves), y = gen::random_map(rng, ctx, leaves);
  for (auto _ : state) benchmark::DoNotOptimize(compose(x, y));
}
BENCHMARK(BM_Compose)->Arg(5)->Arg(20)->Arg(80);

void BM_WreathDecompose(benchmark::State& state) {
  gen::Rng rng(2);
  const Generators g = thompson_generators();
  const PLMap x = embed(gen::random_normal_form(rng, 5, 3, state.range(0)), g);
  for (auto _ : state) benchmark::DoNotOptimize(wreath_decompose(x, g));
}
BENCHMARK(BM_WreathDecompose)->Arg(1)->Arg(4)->Arg(7);

void BM_DecomposeToTwo(benchmark::State& state) {
  gen::Rng rng(3);
  const CommutatorList l =
      gen::random_commutator_list(rng, GroupContext::thompson(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_to_two(l));
}
BENCHMARK(BM_DecomposeToTwo)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_ReducedHolds(benchmark::State& state) {
  const logic::Signature gamma{{{"E", 2}, {"P", 1}}, {}};
  const logic::Signature sigma{{{"R", 2}, {"Q", 1}}, {}};
  gen::Rng rng(4);
  const logic::FiniteStructure n = gen::random_structure(rng, gamma, 4);
  const auto d = gen::random_admissible_interpretation(rng, n, sigma, static_cast<int>(state.range(0)));
  const logic::Formula alpha = gen::random_sentence(rng, sigma, 3);
  for (auto _ : state) benchmark::DoNotOptimize(logic::reduced_holds(n, alpha, d));
}
BENCHMARK(BM_ReducedHolds)->Arg(1)->Arg(2);

void BM_QuotientEvaluate(benchmark::State& state) {
  const logic::Signature gamma{{{"E", 2}, {"P", 1}}, {}};
  const logic::Signature sigma{{{"R", 2}, {"Q", 1}}, {}};
  gen::Rng rng(5);
  const logic::FiniteStructure n = gen::random_structure(rng, gamma, 4);
  const auto d = gen::random_admissible_interpretation(rng, n, sigma, static_cast<int>(state.range(0)));
  const logic::Formula alpha = gen::random_sentence(rng, sigma, 3);
  for (auto _ : state) benchmark::DoNotOptimize(logic::evaluate(logic::quotient(n, d), alpha));
}
BENCHMARK(BM_QuotientEvaluate)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
