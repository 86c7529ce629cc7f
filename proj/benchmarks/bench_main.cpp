#include <benchmark/benchmark.h>

#include "renyi/distributions.hpp"
#include "renyi/estimator.hpp"
#include "renyi/gof.hpp"
#include "renyi/knn.hpp"

using namespace renyi;

namespace {

SampleMatrix student_sample(std::size_t n, int m) {
  return sample(DistributionSpec::standard(Family::Student, 5.0, m), n, Seed{99, 0});
}

void BM_KnnTree(benchmark::State& state) {
  const SampleMatrix x = student_sample(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(knn_all(x, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnTree)->ArgsProduct({{500, 1000, 2000, 5000}, {2, 3, 6}})->Unit(benchmark::kMillisecond);

void BM_KnnBrute(benchmark::State& state) {
  const SampleMatrix x = student_sample(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(knn_brute(x, 3));
}
BENCHMARK(BM_KnnBrute)->ArgsProduct({{500, 1000, 2000}, {2, 6}})->Unit(benchmark::kMillisecond);

void BM_EstimateFromDistances(benchmark::State& state) {
  const SampleMatrix x = student_sample(5000, 3);
  const KnnDistances rho = knn_all(x, 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_g(rho, 3, 1, 0.8));
}
BENCHMARK(BM_EstimateFromDistances)->Unit(benchmark::kMicrosecond);

void BM_StudentStatistic(benchmark::State& state) {
  const SampleMatrix x = student_sample(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(w_student(x, 1, 5.0));
}
BENCHMARK(BM_StudentStatistic)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FitShape(benchmark::State& state) {
  const SampleMatrix x = student_sample(1000, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_shape(x, 1, Family::Student, default_bounds(Family::Student)));
}
BENCHMARK(BM_FitShape)->Unit(benchmark::kMillisecond);

void BM_SampleStudent(benchmark::State& state) {
  const auto spec = DistributionSpec::standard(Family::Student, 5.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sample(spec, 10000, Seed{1, 0}));
}
BENCHMARK(BM_SampleStudent)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
