#include <benchmark/benchmark.h>

#include <random>

#include "linsand/eggbox.hpp"
#include "linsand/generators.hpp"
#include "linsand/sandwich.hpp"

using namespace linsand;

namespace {
  Matrix random_matrix(Field const& f, size_t rows, size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> pick(0, f.q() - 1);
    Matrix x(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        x.at(i, j) = static_cast<Elem>(pick(rng));
      }
    }
    return x;
  }
}  // namespace

static void BM_star_normalized(benchmark::State& state) {
  auto const n   = static_cast<size_t>(state.range(0));
  Field const f  = Field::parse("3");
  auto const ctx = SandwichContext::normalized(f, n, n, n / 2);
  std::mt19937_64 rng(1);
  Matrix const x = random_matrix(f, n, n, rng), y = random_matrix(f, n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.star_normalized(x, y));
  }
}
BENCHMARK(BM_star_normalized)->Arg(4)->Arg(16)->Arg(64);

static void BM_rref(benchmark::State& state) {
  auto const n  = static_cast<size_t>(state.range(0));
  Field const f = Field::parse("2^3");
  std::mt19937_64 rng(2);
  Matrix const x = random_matrix(f, n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank(x));
  }
}
BENCHMARK(BM_rref)->Arg(4)->Arg(16)->Arg(64);

static void BM_green_key(benchmark::State& state) {
  Field const f  = Field::parse("3");
  auto const ctx = SandwichContext::normalized(f, 3, 4, 2);
  auto const xs  = enumerate_matrices(f, 3, 4, 2, 1u << 20);
  size_t     i   = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(green_key(ctx, xs[i++ % xs.size()], Relation::D));
  }
}
BENCHMARK(BM_green_key);

static void BM_regular_elements(benchmark::State& state) {
  Field const f  = Field::parse("2");
  auto const ctx = SandwichContext::normalized(f, 3, 4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(regular_elements(ctx));
  }
}
BENCHMARK(BM_regular_elements)->Unit(benchmark::kMillisecond);

static void BM_genset_full_certified(benchmark::State& state) {
  Field const f  = Field::parse("3");
  auto const ctx = SandwichContext::normalized(f, 2, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(genset_full(ctx));
  }
}
BENCHMARK(BM_genset_full_certified)->Unit(benchmark::kMillisecond);

static void BM_eggbox_all(benchmark::State& state) {
  Field const f  = Field::parse("3");
  auto const ctx = SandwichContext::normalized(f, 2, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eggbox(ctx, EggboxScope::parse("all")));
  }
}
BENCHMARK(BM_eggbox_all)->Unit(benchmark::kMillisecond);

static void BM_gl_genset(benchmark::State& state) {
  Field const f = Field::parse("3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl_genset(f, 3));
  }
}
BENCHMARK(BM_gl_genset)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
