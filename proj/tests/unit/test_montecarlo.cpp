#include <doctest.h>

#include <cstdlib>

#include "test_helpers.hpp"

using namespace csr;

namespace {

// Scoped CSR_THREADS override.
struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) {
    const char* old = std::getenv("CSR_THREADS");
    if (old) saved_ = old;
    had_ = old != nullptr;
    setenv("CSR_THREADS", value, 1);
  }
  ~ThreadsEnv() {
    if (had_) setenv("CSR_THREADS", saved_.c_str(), 1);
    else unsetenv("CSR_THREADS");
  }
  std::string saved_;
  bool had_ = false;
};

bool records_identical(const std::vector<TrialRecord>& a, const std::vector<TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].m != b[i].m || a[i].true_shift != b[i].true_shift ||
        a[i].estimated_shift != b[i].estimated_shift ||
        a[i].noise_free_shift != b[i].noise_free_shift)
      return false;
    const bool nan_a = std::isnan(a[i].snr_realized), nan_b = std::isnan(b[i].snr_realized);
    if (nan_a != nan_b || (!nan_a && a[i].snr_realized != b[i].snr_realized)) return false;
    if (a[i].margin != b[i].margin) return false;
    if (a[i].certificate.verdict != b[i].certificate.verdict) return false;
    if (a[i].certificate.min_gap != b[i].certificate.min_gap) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("TrialRng is deterministic and its draws behave") {
  TrialRng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());

  TrialRng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.01);

  // uniform_int covers the range inclusively.
  bool seen_lo = false, seen_hi = false;
  for (int i = 0; i < 2000; ++i) {
    const int v = rng.uniform_int(2, 5);
    CHECK(v >= 2);
    CHECK(v <= 5);
    seen_lo = seen_lo || v == 2;
    seen_hi = seen_hi || v == 5;
  }
  CHECK(seen_lo);
  CHECK(seen_hi);

  // Box-Muller normals: moments sane.
  double mean = 0.0, var = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double z = rng.normal();
    mean += z;
    var += z * z;
  }
  mean /= draws;
  var = var / draws - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
}

TEST_CASE("sample_signal: reproducible uniform(0,1) entries") {
  TrialRng a(9), b(9);
  const Signal s1 = sample_signal(8, a);
  const Signal s2 = sample_signal(8, b);
  CHECK((s1.values() - s2.values()).norm() == 0.0);

  TrialRng rng(10);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws / 10; ++i) {
    const Signal s = sample_signal(10, rng);
    for (int t = 0; t < 10; ++t) {
      CHECK(s[t].imag() == 0.0);
      CHECK(s[t].real() > 0.0);
      CHECK(s[t].real() < 1.0);
      sum += s[t].real();
    }
  }
  CHECK(std::abs(sum / draws - 0.5) < 0.01);
}

TEST_CASE("add_calibrated_noise hits the target SNR exactly") {
  TrialRng rng(11);
  Eigen::VectorXcd v = csrtest::random_complex_vector(5, rng);

  const NoisyVector low = add_calibrated_noise(v, 2.0, rng);
  CHECK(low.error.squaredNorm() ==
        doctest::Approx(v.squaredNorm() / 2.0).epsilon(1e-12));
  CHECK((low.noisy - v - low.error).norm() < 1e-15 * v.norm());
  const double realized = v.squaredNorm() / (low.noisy - v).squaredNorm();
  CHECK(realized == doctest::Approx(2.0).epsilon(1e-12));

  const NoisyVector high = add_calibrated_noise(v, 1e12, rng);
  CHECK(high.error.norm() < 1e-5 * v.norm());

  CHECK_THROWS_AS(add_calibrated_noise(Eigen::VectorXcd::Zero(3), 2.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(add_calibrated_noise(v, 0.0, rng), std::invalid_argument);
}

TEST_CASE("add_expected_noise meets the SNR in expectation") {
  TrialRng rng(12);
  Eigen::VectorXcd v = csrtest::random_complex_vector(4, rng);
  const double snr = 5.0;
  double acc = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) acc += add_expected_noise(v, snr, rng).error.squaredNorm();
  CHECK(acc / reps == doctest::Approx(v.squaredNorm() / snr).epsilon(0.03));
}

TEST_CASE("calibrated noise directions are isotropic") {
  TrialRng rng(13);
  const int m = 4;
  Eigen::VectorXcd v = csrtest::random_complex_vector(m, rng);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const NoisyVector nv = add_calibrated_noise(v, 3.0, rng);
    Eigen::VectorXd u(2 * m);
    for (int p = 0; p < m; ++p) {
      u[2 * p] = nv.error[p].real();
      u[2 * p + 1] = nv.error[p].imag();
    }
    u /= u.norm();
    cov += u * u.transpose();
  }
  cov /= draws;
  const Eigen::MatrixXd target = Eigen::MatrixXd::Identity(2 * m, 2 * m) / (2.0 * m);
  CHECK((cov - target).cwiseAbs().maxCoeff() < 0.01);
}

TEST_CASE("sample_frequency_set honors each policy") {
  TrialRng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 16);
    const int m = rng.uniform_int(1, n);
    const FrequencySet a = sample_frequency_set(n, m, FsPolicy::require_coprime, rng);
    CHECK(a.size() == m);
    CHECK(a.contains_coprime());

    const FrequencySet b = sample_frequency_set(n, m, FsPolicy::nonzero_coprime, rng);
    CHECK(b.contains_coprime());
    if (m < n) {
      for (int k : b.indices()) CHECK(k != 0);
    } else {
      CHECK(b.size() == n);  // falls back to the full set
    }

    const FrequencySet c = sample_frequency_set(n, m, FsPolicy::unconstrained, rng);
    CHECK(c.size() == m);
  }
}

TEST_CASE("noise-free suite: full success under the coprime policy") {
  TrialConfig cfg;
  cfg.n = 10;
  cfg.trials = 300;
  cfg.seed = 77;
  const NoiseFreeSuiteResult result = run_noise_free_suite(cfg);
  CHECK(result.success_rate == 1.0);
  CHECK(result.failure_indices.empty());
  CHECK(result.records.size() == 300);
  long total = 0;
  for (long c : result.histogram.counts[0]) total += c;
  CHECK(total == 300);
  for (const TrialRecord& rec : result.records) {
    CHECK(rec.certificate.verdict == Verdict::noise_free_guaranteed);
    CHECK(std::isnan(rec.snr_realized));
  }
}

TEST_CASE("noise-free suite: a shared-gcd frequency set fails with parity structure") {
  TrialConfig cfg;
  cfg.n = 10;
  cfg.trials = 200;
  cfg.seed = 78;
  cfg.fixed_ks = std::vector<int>{5};
  const NoiseFreeSuiteResult result = run_noise_free_suite(cfg);
  CHECK(result.success_rate < 1.0);
  for (const TrialRecord& rec : result.records) {
    // Phase period 2: the estimate preserves the parity of the true shift.
    CHECK(rec.estimated_shift % 2 == rec.true_shift % 2);
    CHECK(rec.estimated_shift == rec.true_shift % 2);  // smallest tied index
    CHECK(rec.certificate.verdict == Verdict::inconclusive);
  }
}

TEST_CASE("noisy suite: structure, realized SNR, and certificate soundness") {
  TrialConfig cfg;
  cfg.n = 10;
  cfg.fixed_l = 5;
  cfg.snr = 10.0;
  cfg.noise_mode = NoiseMode::calibrated;
  cfg.fs_policy = FsPolicy::nonzero_coprime;
  cfg.trials = 120;
  cfg.seed = 79;
  const NoisySuiteResult result = run_noisy_suite(cfg);
  REQUIRE(result.records.size() == 1200);
  REQUIRE(result.histogram.ms.size() == 10);

  for (int mi = 0; mi < 10; ++mi) {
    long total = 0;
    for (long c : result.histogram.counts[mi]) total += c;
    CHECK(total == cfg.trials);
  }
  for (const TrialRecord& rec : result.records) {
    CHECK(rec.snr_realized == doctest::Approx(10.0).epsilon(1e-9));
    if (certifies_noise_invariance(rec.certificate.verdict)) {
      CHECK(rec.estimated_shift == rec.noise_free_shift);
    }
    if (certifies_true_shift(rec.certificate.verdict)) {
      CHECK(rec.estimated_shift == 5);
    }
  }

  // m = 10 under nonzero_coprime uses the full frequency set.
  for (int t = 0; t < cfg.trials; ++t) {
    CHECK(result.records[9 * cfg.trials + t].m == 10);
  }
}

TEST_CASE("suites are bit-identical across worker counts") {
  TrialConfig cfg;
  cfg.n = 10;
  cfg.fixed_l = 5;
  cfg.snr = 10.0;
  cfg.trials = 60;
  cfg.seed = 80;

  std::vector<TrialRecord> serial, parallel;
  {
    ThreadsEnv env("1");
    serial = run_noisy_suite(cfg).records;
  }
  {
    ThreadsEnv env("8");
    parallel = run_noisy_suite(cfg).records;
  }
  CHECK(records_identical(serial, parallel));

  TrialConfig nf;
  nf.n = 10;
  nf.trials = 150;
  nf.seed = 81;
  std::vector<TrialRecord> nf_serial, nf_parallel;
  {
    ThreadsEnv env("1");
    nf_serial = run_noise_free_suite(nf).records;
  }
  {
    ThreadsEnv env("5");
    nf_parallel = run_noise_free_suite(nf).records;
  }
  CHECK(records_identical(nf_serial, nf_parallel));
}

TEST_CASE("TrialConfig validation") {
  TrialConfig cfg;
  cfg.n = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n = 10;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.trials = 10;
  cfg.fixed_m = 11;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.fixed_m.reset();
  cfg.snr = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.snr.reset();
  cfg.fixed_ks = std::vector<int>{3, 3};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
