#include <doctest.h>

#include "test_helpers.hpp"

using namespace csr;
using csrtest::random_complex_signal;
using csrtest::random_real_signal;

namespace {

Signal sig(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return Signal::from_real(v);
}

bool equals(const Signal& a, std::initializer_list<double> values, double tol = 0.0) {
  if (a.size() != static_cast<int>(values.size())) return false;
  int i = 0;
  for (double x : values) {
    if (std::abs(a[i++] - cplx{x, 0.0}) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Signal validates its invariants") {
  CHECK_THROWS_AS(Signal(Eigen::VectorXcd()), std::invalid_argument);
  Eigen::VectorXcd bad(2);
  bad << cplx{1.0, 0.0}, cplx{std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(Signal(std::move(bad)), std::invalid_argument);
}

TEST_CASE("ShiftIndex normalizes modulo n") {
  CHECK(ShiftIndex(0, 4).value() == 0);
  CHECK(ShiftIndex(5, 4).value() == 1);
  CHECK(ShiftIndex(-1, 4).value() == 3);
  CHECK(ShiftIndex(-9, 4).value() == 3);
  CHECK_THROWS_AS(ShiftIndex(0, 0), std::invalid_argument);
}

TEST_CASE("cyclic_shift matches the delay convention") {
  const Signal x = sig({1, 2, 3, 4});
  CHECK(equals(cyclic_shift(x, ShiftIndex(0, 4)), {1, 2, 3, 4}));
  CHECK(equals(cyclic_shift(x, ShiftIndex(1, 4)), {4, 1, 2, 3}));
  // A shift of 5 is the same as a shift of 1.
  CHECK(equals(cyclic_shift(x, ShiftIndex(5, 4)), {4, 1, 2, 3}));
}

TEST_CASE("shift_matrix agrees with cyclic_shift and is a permutation") {
  CHECK(shift_matrix(2, ShiftIndex(0, 2)).isApprox(Eigen::MatrixXd::Identity(2, 2)));

  const Eigen::MatrixXd D31 = shift_matrix(3, ShiftIndex(1, 3));
  Eigen::Vector3d x3{1.0, 2.0, 3.0};
  Eigen::Vector3d want{3.0, 1.0, 2.0};
  CHECK((D31 * x3 - want).norm() == 0.0);

  const Eigen::MatrixXd D42 = shift_matrix(4, ShiftIndex(2, 4));
  CHECK((D42.transpose() * D42 - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

  TrialRng rng(11);
  for (int n : {1, 2, 5, 9}) {
    const Signal x = random_complex_signal(n, rng);
    for (int l = 0; l < n; ++l) {
      const Eigen::VectorXcd via_matrix =
          shift_matrix(n, ShiftIndex(l, n)).cast<cplx>() * x.values();
      CHECK((via_matrix - cyclic_shift(x, ShiftIndex(l, n)).values()).norm() < 1e-15);
    }
  }
}

TEST_CASE("dft_coefficient basics and the shift phase property") {
  const Signal ones = sig({1, 1, 1, 1});
  CHECK(std::abs(dft_coefficient(ones, 0) - cplx{2.0, 0.0}) < 1e-14);
  CHECK(std::abs(dft_coefficient(ones, 1)) < 1e-14);
  CHECK_THROWS_AS(dft_coefficient(ones, 4), std::out_of_range);
  CHECK_THROWS_AS(dft_coefficient(ones, -1), std::out_of_range);

  // Direct-summation oracle plus the phase shift under cyclic delay.
  TrialRng rng(12);
  for (int n : {3, 7, 12}) {
    const Signal x = random_complex_signal(n, rng);
    for (int k = 0; k < n; ++k) {
      cplx direct{0.0, 0.0};
      for (int t = 0; t < n; ++t) direct += x[t] * csrtest::raw_unit_root(k, t, n);
      direct /= std::sqrt(static_cast<double>(n));
      CHECK(std::abs(dft_coefficient(x, k) - direct) < 1e-12);

      for (int l : {1, n / 2, n - 1}) {
        const cplx shifted = dft_coefficient(cyclic_shift(x, ShiftIndex(l, n)), k);
        const cplx expected = csrtest::raw_unit_root(k, l, n) * dft_coefficient(x, k);
        CHECK(std::abs(shifted - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("classical_estimate recovers shifts and reports n^2 multiplies") {
  TrialRng rng(13);
  const Signal x = random_real_signal(10, rng);
  const Signal y = cyclic_shift(x, ShiftIndex(5, 10));

  OpCount count;
  const ShiftEstimate est = classical_estimate(x, y, &count);
  CHECK(est.s_star == 5);
  CHECK(est.margin > 0.0);
  CHECK(count.complex_multiplies == 100);

  const ShiftEstimate self = classical_estimate(x, x);
  CHECK(self.s_star == 0);

  Eigen::VectorXcd a(3), b(2);
  a.setOnes();
  b.setOnes();
  CHECK_THROWS_AS(classical_estimate(Signal(a), Signal(b)), std::invalid_argument);
}

TEST_CASE("classical FFT path equals the direct path") {
  TrialRng rng(14);
  for (int n : {1, 2, 3, 8, 10, 16, 31}) {
    const Signal x = random_complex_signal(n, rng);
    const Signal y = random_complex_signal(n, rng);
    const ScoreVector direct = classical_scores_direct(x, y);
    const ScoreVector fft = classical_scores_fft(x, y);
    REQUIRE(fft.size() == n);
    CHECK((direct - fft).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("shift invariants: isometry, composition, recovery, argmin form") {
  TrialRng rng(15);
  for (int n : {2, 5, 12}) {
    const Signal x = random_complex_signal(n, rng);
    for (int l1 = 0; l1 < n; ++l1) {
      CHECK(cyclic_shift(x, ShiftIndex(l1, n)).values().norm() ==
            doctest::Approx(x.values().norm()).epsilon(1e-14));
      for (int l2 = 0; l2 < n; ++l2) {
        const Signal once = cyclic_shift(cyclic_shift(x, ShiftIndex(l1, n)), ShiftIndex(l2, n));
        const Signal both = cyclic_shift(x, ShiftIndex(l1 + l2, n));
        CHECK((once.values() - both.values()).norm() == 0.0);
      }
    }

    // Aperiodic random signals: every shift is recovered.
    for (int l = 0; l < n; ++l) {
      CHECK(classical_estimate(x, cyclic_shift(x, ShiftIndex(l, n))).s_star == l);
    }

    // argmax of the correlation scores == argmin of ||y - D^s x||^2.
    const Signal y = random_complex_signal(n, rng);
    const ShiftEstimate est = classical_estimate(x, y);
    int argmin = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n; ++s) {
      const double resid =
          (y.values() - cyclic_shift(x, ShiftIndex(s, n)).values()).squaredNorm();
      if (resid < best) {
        best = resid;
        argmin = s;
      }
    }
    CHECK(est.s_star == argmin);
  }
}

TEST_CASE("ties break toward the smallest shift and flag degeneracy") {
  const Signal constant = sig({1, 1, 1, 1});
  const ShiftEstimate est = classical_estimate(constant, constant);
  CHECK(est.s_star == 0);
  CHECK(est.margin == doctest::Approx(0.0));
  CHECK(est.degenerate);

  // Period-2 signal: shifts 1 and 3 tie; the smallest wins.
  const Signal alt = sig({1, 0, 1, 0});
  const Signal target = cyclic_shift(alt, ShiftIndex(3, 4));
  CHECK(classical_estimate(alt, target).s_star == 1);
}
