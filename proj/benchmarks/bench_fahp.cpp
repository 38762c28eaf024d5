#include <fahp/consistency.hpp>
#include <fahp/hierarchy.hpp>
#include <fahp/project_io.hpp>
#include <fahp/sensitivity.hpp>
#include <fahp/weights.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

fahp::FuzzyComparisonMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("X" + std::to_string(i));
  fahp::ExpertJudgmentSet set{"e", "n", {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      int s;
      do s = d(rng);
      while (s == 0 || s == -1);
      set.upper_triangle.push_back({i, j, s});
    }
  return fahp::matrix_from_scores(ids, set);
}

const fahp::ProjectFile& bundled() {
  static const auto p = fahp::load_project_file(FAHP_FIXTURE_DIR "/turkiye.json");
  return p;
}

void BM_GmMiddle(benchmark::State& state) {
  const auto m = random_matrix(std::size_t(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fahp::derive_gm_middle(m));
}
BENCHMARK(BM_GmMiddle)->DenseRange(3, 15, 4);

void BM_Buckley(benchmark::State& state) {
  const auto m = random_matrix(std::size_t(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fahp::derive_buckley(m));
}
BENCHMARK(BM_Buckley)->DenseRange(3, 15, 4);

void BM_ConsistencyRatio(benchmark::State& state) {
  const auto crisp = fahp::crispify(random_matrix(std::size_t(state.range(0)), 3), fahp::DefuzzMethod::Middle);
  const auto w = fahp::row_geometric_mean(crisp);
  for (auto _ : state) benchmark::DoNotOptimize(fahp::consistency_ratio(crisp, w));
}
BENCHMARK(BM_ConsistencyRatio)->DenseRange(3, 15, 4);

void BM_BundledPipeline(benchmark::State& state) {
  for (auto _ : state) {
    const auto h = fahp::to_hierarchy(bundled());
    benchmark::DoNotOptimize(fahp::score_alternatives(h, fahp::compute_local_weights(h)));
  }
}
BENCHMARK(BM_BundledPipeline);

void BM_BundledSensitivity(benchmark::State& state) {
  const auto h = fahp::to_hierarchy(bundled());
  const auto base = fahp::score_alternatives(h, fahp::compute_local_weights(h));
  for (auto _ : state) benchmark::DoNotOptimize(fahp::run_scenarios(h, base, 1.5));
}
BENCHMARK(BM_BundledSensitivity);

void BM_SaveLoad(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fahp::load_project(fahp::save_project(bundled())));
}
BENCHMARK(BM_SaveLoad);

} // namespace

BENCHMARK_MAIN();
