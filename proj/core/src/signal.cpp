#include "csr/signal.hpp"

#include <numbers>

#include <unsupported/Eigen/FFT>

namespace csr {

ShiftEstimate estimate_from_scores(ScoreVector scores) {
  const int n = static_cast<int>(scores.size());
  if (n < 1) throw std::invalid_argument("estimate_from_scores: empty score vector");
  if (!scores.allFinite()) throw std::invalid_argument("estimate_from_scores: non-finite score");

  int best = 0;
  for (int s = 1; s < n; ++s) {
    if (scores[s] > scores[best]) best = s;
  }
  double runner_up = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    if (s != best && scores[s] > runner_up) runner_up = scores[s];
  }

  ShiftEstimate est;
  est.s_star = best;
  est.margin = (n == 1) ? 0.0 : scores[best] - runner_up;
  est.degenerate =
      n > 1 && est.margin <= kDegeneracyTol * std::max(1.0, std::abs(scores[best]));
  est.scores = std::move(scores);
  return est;
}

Signal cyclic_shift(const Signal& x, const ShiftIndex& l) {
  const int n = x.size();
  const int shift = ShiftIndex(l.value(), n).value();
  Eigen::VectorXcd out(n);
  for (int t = 0; t < n; ++t) {
    out[t] = x[(t - shift + n) % n];
  }
  return Signal(std::move(out));
}

Eigen::MatrixXd shift_matrix(int n, const ShiftIndex& l) {
  if (n < 1) throw std::invalid_argument("shift_matrix: n must be >= 1");
  const int shift = ShiftIndex(l.value(), n).value();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < n; ++t) {
    D(t, (t - shift + n) % n) = 1.0;
  }
  return D;
}

cplx dft_coefficient(const Signal& x, int k) {
  const int n = x.size();
  if (k < 0 || k >= n) throw std::out_of_range("dft_coefficient: k out of range");
  cplx acc{0.0, 0.0};
  for (int t = 0; t < n; ++t) {
    // Reduce k*t mod n before forming the angle; keeps the phase exact-ish.
    const long long r = (static_cast<long long>(k) * t) % n;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / n;
    acc += x[t] * std::polar(1.0, angle);
  }
  return acc / std::sqrt(static_cast<double>(n));
}

ScoreVector classical_scores_direct(const Signal& x, const Signal& y, OpCount* count) {
  const int n = x.size();
  if (y.size() != n) throw std::invalid_argument("classical_scores_direct: length mismatch");
  ScoreVector scores(n);
  std::uint64_t mults = 0;
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
      acc += std::real(std::conj(y[t]) * x[(t - s + n) % n]);
      ++mults;
    }
    scores[s] = acc;
  }
  if (count) count->complex_multiplies += mults;
  return scores;
}

ScoreVector classical_scores_fft(const Signal& x, const Signal& y) {
  const int n = x.size();
  if (y.size() != n) throw std::invalid_argument("classical_scores_fft: length mismatch");
  if (n == 1) {
    ScoreVector trivial(1);
    trivial[0] = std::real(std::conj(y[0]) * x[0]);
    return trivial;
  }

  Eigen::FFT<double> fft;
  std::vector<cplx> xt(x.values().data(), x.values().data() + n);
  std::vector<cplx> yt(y.values().data(), y.values().data() + n);
  std::vector<cplx> xf(n), yf(n), prod(n), corr(n);
  fft.fwd(xf, xt);
  fft.fwd(yf, yt);
  for (int k = 0; k < n; ++k) prod[k] = std::conj(yf[k]) * xf[k];
  // The correlation uses the forward kernel e^{-2 pi j k s / n}.
  fft.fwd(corr, prod);

  ScoreVector scores(n);
  for (int s = 0; s < n; ++s) scores[s] = std::real(corr[s]) / n;
  return scores;
}

ShiftEstimate classical_estimate(const Signal& x, const Signal& y, OpCount* count) {
  return estimate_from_scores(classical_scores_direct(x, y, count));
}

}  // namespace csr
