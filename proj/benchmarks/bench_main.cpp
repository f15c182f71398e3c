#include <benchmark/benchmark.h>

#include "thetarank/thetarank.hpp"

using namespace thetarank;

static void BM_alpha_petersen(benchmark::State& st) {
  Graph g = petersen();
  for (auto _ : st) benchmark::DoNotOptimize(alpha(g));
}
BENCHMARK(BM_alpha_petersen);

static void BM_alpha_cycle(benchmark::State& st) {
  Graph g = cycle(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(alpha(g));
}
BENCHMARK(BM_alpha_cycle)->Arg(11)->Arg(21)->Arg(31);

static void BM_ms_supports_h9(benchmark::State& st) {
  Graph g = h9();
  for (auto _ : st) benchmark::DoNotOptimize(ms_supports(g, 100000));
}
BENCHMARK(BM_ms_supports_h9);

static void BM_psd_check_exact(benchmark::State& st) {
  RatMatrix m = graph_matrix(petersen());
  for (auto _ : st) benchmark::DoNotOptimize(psd_check_exact(m));
}
BENCHMARK(BM_psd_check_exact);

static void BM_verify_horn_k1(benchmark::State& st) {
  RatMatrix h = horn();
  K1Certificate c = horn_k1();
  for (auto _ : st) benchmark::DoNotOptimize(verify_k1(h, c));
}
BENCHMARK(BM_verify_horn_k1);

static void BM_k1_feasibility_horn(benchmark::State& st) {
  RatMatrix h = horn();
  auto gens = automorphism_generators(cycle(5));
  for (auto _ : st) benchmark::DoNotOptimize(k1_feasibility(h, gens));
}
BENCHMARK(BM_k1_feasibility_horn)->Unit(benchmark::kMillisecond);

static void BM_k0_feasibility_horn(benchmark::State& st) {
  RatMatrix h = horn();
  FeasibilityOptions opt;
  opt.max_iterations = 2000;
  opt.restarts = 0;
  for (auto _ : st) benchmark::DoNotOptimize(k0_feasibility(h, opt));
}
BENCHMARK(BM_k0_feasibility_horn)->Unit(benchmark::kMillisecond);

static void BM_kernel_obstruction_h9(benchmark::State& st) {
  Graph g = h9();
  for (auto _ : st) benchmark::DoNotOptimize(k0_kernel_obstruction(g));
}
BENCHMARK(BM_kernel_obstruction_h9)->Unit(benchmark::kMillisecond);

static void BM_isolated_certificate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(isolated_node_k1(prepare_isolated_instance(cycle(5), 8)));
}
BENCHMARK(BM_isolated_certificate)->Unit(benchmark::kMillisecond);

static void BM_reduce_c5_pendant(benchmark::State& st) {
  Graph g = c5_pendant();
  for (auto _ : st) benchmark::DoNotOptimize(reduce_to_acritical(g));
}
BENCHMARK(BM_reduce_c5_pendant);
BENCHMARK_MAIN();
