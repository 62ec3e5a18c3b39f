#include <benchmark/benchmark.h>

#include <vector>

#include "leeyang/coherence.hpp"
#include "leeyang/experiment_sim.hpp"
#include "leeyang/ising_model.hpp"
#include "leeyang/thermodynamics.hpp"
#include "leeyang/zero_finder.hpp"

using namespace leeyang;

namespace {

IsingParams model(unsigned n, double beta_j) { return IsingParams::from_beta_j(n, beta_j, 1.0, 0.0); }

void BuildPolynomial(benchmark::State& state) {
  const IsingParams p = model(static_cast<unsigned>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_polynomial(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BuildPolynomial)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void CoherenceTrace9(benchmark::State& state) {
  const IsingParams p = model(9, 40.0 / 9.0);
  for (auto _ : state) benchmark::DoNotOptimize(coherence_trace(p, 0.0, coherence_period(p), 2048));
}
BENCHMARK(CoherenceTrace9);

void ZerosReal(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  // T = 0.3 N J: inside the ordered phase, zeros spread around the circle
  const IsingParams p = model(n, 1.0 / (0.3 * n));
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros_real(p));
}
BENCHMARK(ZerosReal)->Arg(9)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void ZerosPolynomial(benchmark::State& state) {
  const PartitionPolynomial poly = build_polynomial(model(static_cast<unsigned>(state.range(0)), 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros_polynomial(poly));
}
BENCHMARK(ZerosPolynomial)->Arg(9)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void EdgeScan500(benchmark::State& state) {
  std::vector<double> temperatures;
  for (int i = 0; i < 12; ++i) temperatures.push_back((0.02 + 0.05 * i) * 500.0);
  for (auto _ : state) benchmark::DoNotOptimize(edge_scan(500, 1.0, temperatures));
}
BENCHMARK(EdgeScan500)->Unit(benchmark::kMillisecond);

void SynthesizeAndExtract(benchmark::State& state) {
  const IsingParams p = model(9, 40.0 / 9.0);
  NoiseModel noise = load_noise_presets(LEEYANG_PRESETS_FILE).at("9J/40");
  const auto times = uniform_grid(0.0, coherence_period(p), kDefaultSamplesPerPeriod);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    noise.seed = seed++;
    benchmark::DoNotOptimize(extract_zeros(synthesize_measurement(p, noise, times)));
  }
}
BENCHMARK(SynthesizeAndExtract)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
