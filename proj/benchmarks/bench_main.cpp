#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tpl/census.hpp"
#include "tpl/patterns.hpp"
#include "tpl/plane.hpp"
#include "tpl/residue.hpp"
#include "tpl/tropical.hpp"

namespace {

std::vector<tpl::Pattern4> random_patterns(std::size_t n) {
  std::mt19937 rng(7);
  std::vector<tpl::Pattern4> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(static_cast<std::uint16_t>(rng()));
  return out;
}

}  // namespace

static void BM_CanonicalForm(benchmark::State& state) {
  const auto patterns = random_patterns(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpl::canonical_form(patterns[i++ & 1023]));
  }
}
BENCHMARK(BM_CanonicalForm);

static void BM_TropicalProfile(benchmark::State& state) {
  const auto patterns = random_patterns(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpl::tropical_profile(patterns[i++ & 1023]));
  }
}
BENCHMARK(BM_TropicalProfile);

static void BM_Theta4(benchmark::State& state) {
  const tpl::Field& f = tpl::Field::prime(7);
  tpl::Block4 u;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) u[r][c] = f.element(static_cast<std::uint32_t>(1 + (3 * r + c) % 6));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpl::theta4(u));
  }
}
BENCHMARK(BM_Theta4);

static void BM_MinorCensus(benchmark::State& state) {
  const tpl::PlanePtr plane = tpl::build_pg2(static_cast<int>(state.range(0)));
  tpl::CensusOptions options;
  options.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpl::minor_type_census(*plane, options).totalMinors);
  }
}
BENCHMARK(BM_MinorCensus)->Args({2, 1})->Args({3, 1})->Args({3, 4})->Unit(benchmark::kMillisecond);

static void BM_WitnessEnumeration(benchmark::State& state) {
  const tpl::PlanePtr plane = tpl::build_pg2(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpl::enumerate_bstar_witnesses(*plane).orderedCount);
  }
}
BENCHMARK(BM_WitnessEnumeration)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_RectangleMultiplicity(benchmark::State& state) {
  const tpl::PlanePtr plane = tpl::build_pg2(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpl::rectangle_multiplicity(*plane).maxMultiplicity);
  }
}
BENCHMARK(BM_RectangleMultiplicity)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
