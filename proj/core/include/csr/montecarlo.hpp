#pragma once

#include <cstdint>
#include <vector>

#include "csr/guarantees.hpp"
#include "csr/rng.hpp"

namespace csr {

// How the per-trial frequency sets are drawn, always m distinct indices:
//   require_coprime  uniform over {0..n-1}, redrawn until one k is coprime to n
//   nonzero_coprime  uniform over {1..n-1} with the same redraw; m = n falls
//                    back to the full set (the DC row cannot be avoided there)
//   unconstrained    uniform over {0..n-1}, no redraw
enum class FsPolicy { require_coprime, nonzero_coprime, unconstrained };

// How measurement noise is scaled against the target SNR:
//   expected_sigma  per-trial sigma = sqrt(||v||^2 / (2 m snr)); the realized
//                   SNR fluctuates around the target
//   calibrated      the drawn noise is rescaled so ||v||^2 / ||e||^2 equals
//                   the target exactly
enum class NoiseMode { expected_sigma, calibrated };

const char* to_string(FsPolicy p);
const char* to_string(NoiseMode m);

struct TrialConfig {
  int n = 10;

  std::optional<int> fixed_m;  // absent: uniform in [m_lo, m_hi]
  int m_lo = 1;
  int m_hi = 9;

  std::optional<int> fixed_l;  // absent: uniform in [l_lo, l_hi]
  int l_lo = 1;
  int l_hi = 9;

  FsPolicy fs_policy = FsPolicy::require_coprime;
  std::optional<std::vector<int>> fixed_ks;  // overrides sampling when present

  std::optional<double> snr;  // absent: noise-free
  NoiseMode noise_mode = NoiseMode::expected_sigma;
  int trials = 10000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrialRecord {
  int m = 0;
  int true_shift = 0;
  int estimated_shift = 0;
  // Estimate from the same trial's noise-free measurements (equals
  // estimated_shift in noise-free suites).
  int noise_free_shift = 0;
  // ||z||^2 / ||z_noisy - z||^2 as realized; NaN for noise-free trials.
  double snr_realized = 0.0;
  double margin = 0.0;
  RecoveryCertificate certificate;
};

// Per-m shift histograms: counts[i][s] counts trials with sample dimension
// ms[i] whose estimate was s.
struct HistogramResult {
  int n = 0;
  std::vector<int> ms;
  std::vector<std::vector<long>> counts;
  std::vector<double> success_rate;
};

// Real i.i.d. uniform(0,1) entries.
Signal sample_signal(int n, TrialRng& rng);

struct NoisyVector {
  Eigen::VectorXcd noisy;
  Eigen::VectorXcd error;
};

// Draws i.i.d. complex Gaussian noise, then rescales it so the realized SNR
// ||v||^2 / ||e||^2 equals the target exactly.
NoisyVector add_calibrated_noise(const Eigen::VectorXcd& v, double snr, TrialRng& rng);

// Draws i.i.d. complex Gaussian noise at the sigma that meets the target SNR
// in expectation; the realized SNR fluctuates.
NoisyVector add_expected_noise(const Eigen::VectorXcd& v, double snr, TrialRng& rng);

// m distinct indices from {0..n-1} under the policy.
FrequencySet sample_frequency_set(int n, int m, FsPolicy policy, TrialRng& rng);

struct NoiseFreeSuiteResult {
  std::vector<TrialRecord> records;
  double success_rate = 0.0;
  std::vector<int> failure_indices;
  HistogramResult histogram;
};

// Noise-free randomized suite: per trial draw x, m, l, and a frequency set,
// compress both signals, run fourier_test, compare against the true shift.
NoiseFreeSuiteResult run_noise_free_suite(const TrialConfig& cfg);

struct NoisySuiteResult {
  // Ordered by (m, trial index); trials per m from cfg.trials.
  std::vector<TrialRecord> records;
  HistogramResult histogram;
  std::vector<double> success_rate_per_m;
  // Fraction with a verdict certifying noise invariance.
  std::vector<double> cert_rate_per_m;
  // Among certified trials, fraction whose noisy estimate matches the
  // noise-free one (1.0 when no trial was certified).
  std::vector<double> cert_agreement_per_m;
};

// Noisy sweep: for each m = 1..n runs cfg.trials trials with calibrated
// complex Gaussian measurement noise, estimating the shift from the noisy
// pair, re-estimating from the clean pair, and certifying each trial.
NoisySuiteResult run_noisy_suite(const TrialConfig& cfg);

// Worker count for suite execution: CSR_THREADS when set and positive,
// otherwise the hardware concurrency. Trial results do not depend on it.
int resolve_thread_count();

}  // namespace csr
