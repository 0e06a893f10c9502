#include "csr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace csr {

const char* to_string(FsPolicy p) {
  switch (p) {
    case FsPolicy::require_coprime: return "require_coprime";
    case FsPolicy::nonzero_coprime: return "nonzero_coprime";
    case FsPolicy::unconstrained: return "unconstrained";
  }
  return "require_coprime";
}

const char* to_string(NoiseMode m) {
  switch (m) {
    case NoiseMode::expected_sigma: return "expected_sigma";
    case NoiseMode::calibrated: return "calibrated";
  }
  return "expected_sigma";
}

void TrialConfig::validate() const {
  if (n < 2) throw std::invalid_argument("TrialConfig: n must be >= 2");
  if (trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
  if (fixed_m && (*fixed_m < 1 || *fixed_m > n))
    throw std::invalid_argument("TrialConfig: fixed m out of range");
  if (!fixed_m && (m_lo < 1 || m_hi > n || m_lo > m_hi))
    throw std::invalid_argument("TrialConfig: m range out of range");
  if (fixed_l && (*fixed_l < 0 || *fixed_l >= n))
    throw std::invalid_argument("TrialConfig: fixed l out of range");
  if (!fixed_l && (l_lo < 0 || l_hi >= n || l_lo > l_hi))
    throw std::invalid_argument("TrialConfig: l range out of range");
  if (fixed_ks) FrequencySet(n, *fixed_ks);  // validates
  if (snr && !(*snr > 0.0)) throw std::invalid_argument("TrialConfig: snr must be > 0");
}

Signal sample_signal(int n, TrialRng& rng) {
  Eigen::VectorXcd values(n);
  for (int t = 0; t < n; ++t) values[t] = cplx{rng.uniform01(), 0.0};
  return Signal(std::move(values));
}

NoisyVector add_calibrated_noise(const Eigen::VectorXcd& v, double snr, TrialRng& rng) {
  if (!(snr > 0.0)) throw std::invalid_argument("add_calibrated_noise: snr must be > 0");
  const double vnorm2 = v.squaredNorm();
  if (vnorm2 == 0.0) throw std::invalid_argument("add_calibrated_noise: zero signal");

  const int m = static_cast<int>(v.size());
  Eigen::VectorXcd e(m);
  double raw2 = 0.0;
  do {
    for (int p = 0; p < m; ++p) e[p] = rng.complex_normal();
    raw2 = e.squaredNorm();
  } while (raw2 == 0.0);

  e *= std::sqrt(vnorm2 / (snr * raw2));
  return NoisyVector{v + e, std::move(e)};
}

NoisyVector add_expected_noise(const Eigen::VectorXcd& v, double snr, TrialRng& rng) {
  if (!(snr > 0.0)) throw std::invalid_argument("add_expected_noise: snr must be > 0");
  const double vnorm2 = v.squaredNorm();
  if (vnorm2 == 0.0) throw std::invalid_argument("add_expected_noise: zero signal");

  const int m = static_cast<int>(v.size());
  // E||e||^2 = 2 sigma^2 m = ||v||^2 / snr.
  const double sigma = std::sqrt(vnorm2 / (snr * 2.0 * m));
  Eigen::VectorXcd e(m);
  for (int p = 0; p < m; ++p) e[p] = sigma * rng.complex_normal();
  return NoisyVector{v + e, std::move(e)};
}

FrequencySet sample_frequency_set(int n, int m, FsPolicy policy, TrialRng& rng) {
  if (m < 1 || m > n) throw std::invalid_argument("sample_frequency_set: m out of range");
  const int lo = policy == FsPolicy::nonzero_coprime ? 1 : 0;
  if (m > n - lo) return FrequencySet::full(n);
  std::vector<int> pool(n - lo), ks(m);
  for (;;) {
    std::iota(pool.begin(), pool.end(), lo);
    // Partial Fisher-Yates draw of m distinct indices.
    for (int i = 0; i < m; ++i) {
      const int j = rng.uniform_int(i, static_cast<int>(pool.size()) - 1);
      std::swap(pool[i], pool[j]);
      ks[i] = pool[i];
    }
    std::sort(ks.begin(), ks.end());
    FrequencySet fs(n, ks);
    if (policy == FsPolicy::unconstrained || fs.contains_coprime()) return fs;
  }
}

int resolve_thread_count() {
  int threads = 0;
  if (const char* env = std::getenv("CSR_THREADS")) {
    threads = std::atoi(env);
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::max(1, threads);
}

namespace {

// Runs body(i) for i in [0, count) on a static partition. Each index writes
// only its own output slot, so results are independent of the worker count.
void for_each_index(int count, const std::function<void(int)>& body) {
  const int threads = std::min(resolve_thread_count(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      const int lo = static_cast<int>(static_cast<long long>(count) * w / threads);
      const int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / threads);
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

RecoveryCertificate noise_free_trial_certificate(const FrequencySet& fs,
                                                 const Eigen::VectorXcd& v, double tol) {
  RecoveryCertificate cert;
  cert.commutation_ok = true;      // partial Fourier, holds structurally
  cert.tight_frame_alpha = 1.0;
  const ColumnGap gap = fourier_min_column_gap(v, fs);
  cert.min_gap = gap.gap;
  cert.verdict = gap.gap > tol ? Verdict::noise_free_guaranteed : Verdict::inconclusive;
  cert.details["n"] = static_cast<double>(fs.ambient_dim());
  cert.details["m"] = static_cast<double>(fs.size());
  cert.details["min_gap_all_pairs"] = gap.gap;
  cert.details["coprime_condition"] = coprime_condition(fs, v) ? 1.0 : 0.0;
  return cert;
}

std::vector<double> histogram_success(const std::vector<int>& ms,
                                      const std::vector<std::vector<long>>& counts,
                                      int true_shift, long trials) {
  std::vector<double> rate(ms.size(), 0.0);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    rate[i] = static_cast<double>(counts[i][true_shift]) / static_cast<double>(trials);
  }
  return rate;
}

}  // namespace

NoiseFreeSuiteResult run_noise_free_suite(const TrialConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;

  NoiseFreeSuiteResult result;
  result.records.resize(cfg.trials);

  for_each_index(cfg.trials, [&](int t) {
    TrialRng rng(derive_seed(cfg.seed, 0, static_cast<std::uint64_t>(t)));
    const Signal x = sample_signal(n, rng);
    const int m = cfg.fixed_m ? *cfg.fixed_m : rng.uniform_int(cfg.m_lo, cfg.m_hi);
    const int l = cfg.fixed_l ? *cfg.fixed_l : rng.uniform_int(cfg.l_lo, cfg.l_hi);
    const FrequencySet fs = cfg.fixed_ks ? FrequencySet(n, *cfg.fixed_ks)
                                         : sample_frequency_set(n, m, cfg.fs_policy, rng);

    const Signal y = cyclic_shift(x, ShiftIndex(l, n));
    const Eigen::VectorXcd z = measure(fs, y);
    const Eigen::VectorXcd v = measure(fs, x);
    const ShiftEstimate est = fourier_test(MeasurementPair::fourier(z, v, fs));

    TrialRecord& rec = result.records[t];
    rec.m = fs.size();
    rec.true_shift = l;
    rec.estimated_shift = est.s_star;
    rec.noise_free_shift = est.s_star;
    rec.snr_realized = std::numeric_limits<double>::quiet_NaN();
    rec.margin = est.margin;
    rec.certificate = noise_free_trial_certificate(fs, v, kDefaultTol);
  });

  long successes = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    if (result.records[t].estimated_shift == result.records[t].true_shift) {
      ++successes;
    } else {
      result.failure_indices.push_back(t);
    }
  }
  result.success_rate = static_cast<double>(successes) / cfg.trials;

  result.histogram.n = n;
  result.histogram.ms = {0};  // mixed m; single aggregate histogram
  result.histogram.counts.assign(1, std::vector<long>(n, 0));
  for (const TrialRecord& rec : result.records)
    ++result.histogram.counts[0][rec.estimated_shift];
  result.histogram.success_rate = {result.success_rate};
  return result;
}

NoisySuiteResult run_noisy_suite(const TrialConfig& cfg) {
  cfg.validate();
  if (!cfg.snr) throw std::invalid_argument("run_noisy_suite: snr required");
  const int n = cfg.n;
  const int l = cfg.fixed_l.value_or(5);
  if (l < 0 || l >= n) throw std::invalid_argument("run_noisy_suite: true shift out of range");
  const double snr = *cfg.snr;
  const int trials = cfg.trials;

  NoisySuiteResult result;
  result.records.resize(static_cast<std::size_t>(n) * trials);

  for_each_index(n * trials, [&](int idx) {
    const int m = idx / trials + 1;  // sweep m = 1..n
    const int t = idx % trials;
    TrialRng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(m),
                             static_cast<std::uint64_t>(t)));

    const Signal x = sample_signal(n, rng);
    const FrequencySet fs = cfg.fixed_ks ? FrequencySet(n, *cfg.fixed_ks)
                                         : sample_frequency_set(n, m, cfg.fs_policy, rng);
    const Signal y = cyclic_shift(x, ShiftIndex(l, n));
    const Eigen::VectorXcd z = measure(fs, y);
    const Eigen::VectorXcd v = measure(fs, x);

    const bool exact = cfg.noise_mode == NoiseMode::calibrated;
    const NoisyVector nz = exact ? add_calibrated_noise(z, snr, rng)
                                 : add_expected_noise(z, snr, rng);
    const NoisyVector nv = exact ? add_calibrated_noise(v, snr, rng)
                                 : add_expected_noise(v, snr, rng);

    const ShiftEstimate clean = fourier_test(MeasurementPair::fourier(z, v, fs));
    const ShiftEstimate noisy = fourier_test(MeasurementPair::fourier(nz.noisy, nv.noisy, fs));

    const NoiseInfo info(nz.error.norm(), nv.error.norm(),
                         NoiseInfo::Source::known_realization);

    TrialRecord& rec = result.records[idx];
    rec.m = fs.size();
    rec.true_shift = l;
    rec.estimated_shift = noisy.s_star;
    rec.noise_free_shift = clean.s_star;
    rec.snr_realized = z.squaredNorm() / (nz.noisy - z).squaredNorm();
    rec.margin = noisy.margin;
    rec.certificate = certify_noisy(noisy, nz.noisy, nv.noisy, info, fs);
  });

  result.histogram.n = n;
  result.histogram.ms.resize(n);
  std::iota(result.histogram.ms.begin(), result.histogram.ms.end(), 1);
  result.histogram.counts.assign(n, std::vector<long>(n, 0));

  result.success_rate_per_m.assign(n, 0.0);
  result.cert_rate_per_m.assign(n, 0.0);
  result.cert_agreement_per_m.assign(n, 1.0);

  for (int mi = 0; mi < n; ++mi) {
    long certified = 0, agreed = 0;
    for (int t = 0; t < trials; ++t) {
      const TrialRecord& rec = result.records[static_cast<std::size_t>(mi) * trials + t];
      ++result.histogram.counts[mi][rec.estimated_shift];
      if (certifies_noise_invariance(rec.certificate.verdict)) {
        ++certified;
        if (rec.estimated_shift == rec.noise_free_shift) ++agreed;
      }
    }
    result.cert_rate_per_m[mi] = static_cast<double>(certified) / trials;
    if (certified > 0)
      result.cert_agreement_per_m[mi] = static_cast<double>(agreed) / certified;
  }
  result.histogram.success_rate = histogram_success(result.histogram.ms,
                                                    result.histogram.counts, l, trials);
  result.success_rate_per_m = result.histogram.success_rate;
  return result;
}

}  // namespace csr
