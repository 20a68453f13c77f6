// Typing a whole ball: OpenMP kernel vs serial loop vs the unmemoized reference.
// Each iteration uses a fresh engine so the memo tables start cold.

#include <benchmark/benchmark.h>

#include "rankprof/ef_types.hpp"

using namespace rankprof;

namespace {

const Alphabet kAb("ab");

void BM_BallTypesParallel(benchmark::State& state) {
  auto ball = enumerate_ball(kAb, static_cast<std::size_t>(state.range(0)));
  auto q = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    TypeEngine engine;
    benchmark::DoNotOptimize(ball_types(engine, ball, q));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ball.size()));
}

void BM_BallTypesSerial(benchmark::State& state) {
  auto ball = enumerate_ball(kAb, static_cast<std::size_t>(state.range(0)));
  auto q = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    TypeEngine engine;
    benchmark::DoNotOptimize(ball_types_serial(engine, ball, q));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ball.size()));
}

void BM_BallTypesReference(benchmark::State& state) {
  auto ball = enumerate_ball(kAb, static_cast<std::size_t>(state.range(0)));
  auto q = static_cast<std::size_t>(state.range(1));
  for (auto _ : state)
    for (const auto& w : ball) benchmark::DoNotOptimize(rank_type_reference(w, q));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ball.size()));
}

}  // namespace

BENCHMARK(BM_BallTypesParallel)->Args({8, 3})->Args({10, 3})->Args({10, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallTypesSerial)->Args({8, 3})->Args({10, 3})->Args({10, 4})->Unit(benchmark::kMillisecond);
// The reference is exponential in q; keep it to the small cases.
BENCHMARK(BM_BallTypesReference)->Args({6, 2})->Args({6, 3})->Args({8, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
