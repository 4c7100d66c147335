#include <benchmark/benchmark.h>

#include <random>

#include "plantrace/compliance.h"
#include "plantrace/ingest.h"
#include "plantrace/lis.h"
#include "plantrace/phase_flow.h"
#include "plantrace/scores_io.h"
#include "synthetic.h"

using namespace plantrace;

static void BM_Lis(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::int64_t> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = static_cast<std::int64_t>(rng() % 100000);
  for (auto _ : state) benchmark::DoNotOptimize(longest_increasing_subsequence(v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Lis)->RangeMultiplier(8)->Range(8, 1 << 18)->Complexity(benchmark::oNLogN);

static void BM_ScoreTrajectory(benchmark::State& state) {
  const auto corpus = testsupport::synthetic_corpus(256, 7);
  const auto plan = *find_plan("standard");
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_trajectory(corpus.trajectories[i++ % corpus.size()], plan));
  }
}
BENCHMARK(BM_ScoreTrajectory);

static void BM_ScoreCorpus(benchmark::State& state) {
  const auto corpus = testsupport::synthetic_corpus(2000, 7);
  const auto plan = *find_plan("standard");
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(score_corpus(corpus, plan, {}, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_ScoreCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_BuildFlow(benchmark::State& state) {
  const auto corpus = testsupport::synthetic_corpus(static_cast<std::size_t>(state.range(0)), 3);
  std::vector<Langutory> langs;
  for (const auto& t : corpus.trajectories) langs.push_back(scoring_langutory(t));
  for (auto _ : state) benchmark::DoNotOptimize(build_flow(langs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildFlow)->Arg(1000)->Arg(10000);

static void BM_ParseCanonical(benchmark::State& state) {
  const std::string text = to_canonical(testsupport::synthetic_corpus(500, 11));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_trajectories(text, TrajectoryFormat::kCanonical));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseCanonical)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
