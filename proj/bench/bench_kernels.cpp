#include <benchmark/benchmark.h>

#include "srkit/ring.hpp"
#include "srkit/ring_lab.hpp"
#include "srkit/sr_family.hpp"
#include "srkit/star_check.hpp"

using namespace srkit;

namespace {

struct MutualCase {
  FreeGroup g{Alphabet({"a", "b"})};
  std::vector<std::vector<Word>> sets;

  explicit MutualCase(std::size_t m_size) {
    Rng rng(7);
    const auto m = random_distinct_words(rng, 2, m_size, 4);
    for (const auto& x : star_witness_locally_free(m, 0, 1)) sets.push_back(conjugate_set(g, std::span<const Word>(m), x));
  }
};

void BM_MutualParallel(benchmark::State& state) {
  const MutualCase c(static_cast<std::size_t>(state.range(0)));
  SearchOptions opt;
  opt.max_len = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_mutually_reduced(c.g, std::span<const std::vector<Word>>(c.sets), opt));
  }
}

void BM_MutualReference(benchmark::State& state) {
  const MutualCase c(static_cast<std::size_t>(state.range(0)));
  SearchOptions opt;
  opt.max_len = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::check_mutually_reduced(c.g, std::span<const std::vector<Word>>(c.sets), opt));
  }
}

void BM_FamilySweep(benchmark::State& state) {
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_complete_family(1, static_cast<int>(state.range(0)), parallel));
  }
}

void BM_PairTable(benchmark::State& state) {
  const FreeGroup g(Alphabet({"a", "b"}));
  Rng rng(3);
  const auto left = random_distinct_words(rng, 2, static_cast<std::size_t>(state.range(0)), 8);
  const auto right = random_distinct_words(rng, 2, static_cast<std::size_t>(state.range(0)), 8);
  std::vector<std::pair<Word, Word>> pairs;
  for (const auto& x : left) {
    for (const auto& y : right) pairs.emplace_back(x, y);
  }
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(make_pair_table(g, pairs, 0, parallel));
}

}  // namespace

BENCHMARK(BM_MutualParallel)->Args({2, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MutualReference)->Args({2, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FamilySweep)->Args({7, 1})->Args({7, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairTable)->Args({64, 1})->Args({64, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
