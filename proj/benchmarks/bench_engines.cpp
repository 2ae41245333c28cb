#include <benchmark/benchmark.h>

#include <vector>

#include "redlab/oracle.hpp"
#include "redlab/precedence.hpp"
#include "redlab/statespace.hpp"

namespace {

redlab::Scenario exponential_scenario(int n, int k, int m, redlab::Mode mode) {
  static constexpr double kRates[] = {0.5, 1.0, 2.0};
  redlab::Scenario s;
  s.spec = redlab::SystemSpec::make(n, k);
  s.m = m;
  s.mode = mode;
  std::size_t slot = 0;
  for (int j = 0; j < n; ++j) s.x.push_back(redlab::LifetimeDistribution::exponential(kRates[slot++ % 3]));
  s.y.resize(static_cast<std::size_t>(m));
  for (auto& row : s.y) {
    for (int j = 0; j < n; ++j) row.push_back(redlab::LifetimeDistribution::exponential(kRates[slot++ % 3]));
  }
  return s;
}

void BM_SystemLifetime(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = redlab::SystemSpec::make(n, n / 2 + 1);
  std::vector<double> lifetimes(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) lifetimes[static_cast<std::size_t>(j)] = (j * 7919) % 1000;
  for (auto _ : state) benchmark::DoNotOptimize(redlab::system_lifetime(spec, lifetimes));
}
BENCHMARK(BM_SystemLifetime)->Arg(4)->Arg(64)->Arg(4096);

void BM_RunTrials(benchmark::State& state) {
  const auto s = exponential_scenario(4, 3, 2, redlab::Mode::Active);
  for (auto _ : state) benchmark::DoNotOptimize(redlab::run_trials(s, 100000, 1, 0.0, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_RunTrials)->Unit(benchmark::kMillisecond);

void BM_ExactOracle(benchmark::State& state) {
  const auto atoms = redlab::LifetimeDistribution::discrete(
      {redlab::Atom{1.0, redlab::Rational(1, 3)}, redlab::Atom{2.0, redlab::Rational(1, 3)},
       redlab::Atom{3.0, redlab::Rational(1, 3)}});
  redlab::Scenario s;
  s.spec = redlab::SystemSpec::make(3, 2);
  s.m = 2;
  s.mode = redlab::Mode::Cold;
  s.x.assign(3, atoms);
  s.y.assign(2, std::vector<redlab::LifetimeDistribution>(3, atoms));
  for (auto _ : state) benchmark::DoNotOptimize(redlab::exact_sp(s));
  state.SetItemsProcessed(state.iterations() * 19683);
}
BENCHMARK(BM_ExactOracle)->Unit(benchmark::kMillisecond);

void BM_CheckCases(benchmark::State& state) {
  const auto spec = redlab::SystemSpec::make(5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(redlab::check_cases(spec, 3, redlab::Mode::Active));
}
BENCHMARK(BM_CheckCases)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
