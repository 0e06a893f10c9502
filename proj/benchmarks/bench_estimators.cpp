// Microbenchmarks for the shift estimators: the compressed scalar test costs
// 2mn multiplies against the n^2 of the classical correlation.

#include <benchmark/benchmark.h>

#include "csr/csr.hpp"
#include "csr/rng.hpp"

using namespace csr;

namespace {

struct Fixture {
  Signal x;
  Signal y;
  FrequencySet fs;
  MeasurementPair mp;

  static Fixture make(int n, int m) {
    TrialRng rng(42);
    Signal x = sample_signal(n, rng);
    Signal y = cyclic_shift(x, ShiftIndex(n / 3, n));
    FrequencySet fs = sample_frequency_set(n, m, FsPolicy::require_coprime, rng);
    MeasurementPair mp = MeasurementPair::fourier(measure(fs, y), measure(fs, x), fs);
    return Fixture{std::move(x), std::move(y), std::move(fs), std::move(mp)};
  }
};

}  // namespace

static void BM_ClassicalDirect(benchmark::State& state) {
  const Fixture f = Fixture::make(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical_estimate(f.x, f.y));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassicalDirect)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_ClassicalFft(benchmark::State& state) {
  const Fixture f = Fixture::make(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical_scores_fft(f.x, f.y));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassicalFft)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_FourierTest(benchmark::State& state) {
  const Fixture f =
      Fixture::make(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_test(f.mp));
  }
}
BENCHMARK(BM_FourierTest)
    ->Args({64, 1})
    ->Args({256, 1})
    ->Args({1024, 1})
    ->Args({256, 16})
    ->Args({1024, 16})
    ->Args({1024, 64});

static void BM_L0OracleFourier(benchmark::State& state) {
  const Fixture f =
      Fixture::make(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(l0_oracle(f.mp));
  }
}
BENCHMARK(BM_L0OracleFourier)->Args({256, 4})->Args({1024, 4});

static void BM_NoisySuiteTrial(benchmark::State& state) {
  TrialRng rng(7);
  const int n = 10, m = 2;
  for (auto _ : state) {
    Signal x = sample_signal(n, rng);
    FrequencySet fs = sample_frequency_set(n, m, FsPolicy::nonzero_coprime, rng);
    Eigen::VectorXcd z = measure(fs, cyclic_shift(x, ShiftIndex(5, n)));
    Eigen::VectorXcd v = measure(fs, x);
    NoisyVector nz = add_expected_noise(z, 10.0, rng);
    NoisyVector nv = add_expected_noise(v, 10.0, rng);
    ShiftEstimate est = fourier_test(MeasurementPair::fourier(nz.noisy, nv.noisy, fs));
    NoiseInfo info(nz.error.norm(), nv.error.norm(), NoiseInfo::Source::known_realization);
    benchmark::DoNotOptimize(certify_noisy(est, nz.noisy, nv.noisy, info, fs));
  }
}
BENCHMARK(BM_NoisySuiteTrial);

BENCHMARK_MAIN();
