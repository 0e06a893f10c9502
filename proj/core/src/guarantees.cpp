#include "csr/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace csr {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::noise_unaffected: return "noise_unaffected";
    case Verdict::per_column_true_shift: return "per_column_true_shift";
    case Verdict::true_shift_guaranteed: return "true_shift_guaranteed";
    case Verdict::noise_free_guaranteed: return "noise_free_guaranteed";
  }
  return "inconclusive";
}

std::optional<Verdict> verdict_from_string(std::string_view name) {
  for (Verdict v : {Verdict::inconclusive, Verdict::noise_unaffected,
                    Verdict::per_column_true_shift, Verdict::true_shift_guaranteed,
                    Verdict::noise_free_guaranteed}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

bool certifies_true_shift(Verdict v) {
  return v == Verdict::per_column_true_shift || v == Verdict::true_shift_guaranteed ||
         v == Verdict::noise_free_guaranteed;
}

bool certifies_noise_invariance(Verdict v) {
  return v == Verdict::noise_unaffected || v == Verdict::per_column_true_shift ||
         v == Verdict::true_shift_guaranteed;
}

RecoveryCertificate certify_noise_free(const SensingMatrix& A, const Signal& x, double tol) {
  if (A.cols() != x.size())
    throw std::invalid_argument("certify_noise_free: dimension mismatch");

  RecoveryCertificate cert;
  const CommutationResult comm = commutation_check(A, tol);
  cert.commutation_ok = comm.ok;
  cert.tight_frame_alpha = tight_frame_check(A, tol);

  const Eigen::MatrixXcd AX = compress_dictionary(A, shifted_dictionary(x));
  ColumnGap gap{0.0, 0, 0};
  if (x.size() >= 2) gap = min_column_gap(AX);
  cert.min_gap = gap.gap;

  const bool separated = x.size() >= 2 ? gap.gap > tol : true;
  cert.verdict = (comm.ok && cert.tight_frame_alpha && separated)
                     ? Verdict::noise_free_guaranteed
                     : Verdict::inconclusive;

  cert.details["n"] = static_cast<double>(A.cols());
  cert.details["m"] = static_cast<double>(A.rows());
  cert.details["tol"] = tol;
  cert.details["commutation_deviation"] = comm.worst_deviation;
  if (cert.tight_frame_alpha) cert.details["alpha"] = *cert.tight_frame_alpha;
  cert.details["min_gap_all_pairs"] = gap.gap;
  cert.details["gap_col_a"] = static_cast<double>(gap.col_a);
  cert.details["gap_col_b"] = static_cast<double>(gap.col_b);
  return cert;
}

bool coprime_condition(const FrequencySet& fs, const Eigen::VectorXcd& coeffs,
                       double zero_tol) {
  if (coeffs.size() != fs.size())
    throw std::invalid_argument("coprime_condition: coefficient count mismatch");
  for (int p = 0; p < fs.size(); ++p) {
    if (std::abs(coeffs[p]) > zero_tol && std::gcd(fs.indices()[p], fs.ambient_dim()) == 1)
      return true;
  }
  return false;
}

double delta_zv(const Eigen::VectorXcd& z, const Eigen::VectorXcd& v,
                const NoiseInfo& noise, const ScoreVector& scores) {
  const double radicand = v.squaredNorm() + z.squaredNorm() - 2.0 * scores.maxCoeff();
  // Mathematically >= 0; clamp the ~1e-16 negatives from rounding.
  const double clamped = std::max(0.0, radicand);
  return noise.e_z_norm + noise.e_v_norm + std::sqrt(clamped);
}

double delta_zv(const Eigen::VectorXcd& z, const Eigen::VectorXcd& v,
                const NoiseInfo& noise, const FrequencySet& fs) {
  const ShiftEstimate est = fourier_test(MeasurementPair::fourier(z, v, fs));
  return delta_zv(z, v, noise, est.scores);
}

RecoveryCertificate certify_noisy(const ShiftEstimate& estimate,
                                  const Eigen::VectorXcd& z, const Eigen::VectorXcd& v,
                                  const NoiseInfo& noise, const FrequencySet& fs,
                                  double margin_tol) {
  const int n = fs.ambient_dim();
  if (v.size() != fs.size() || z.size() != v.size())
    throw std::invalid_argument("certify_noisy: measurement/frequency mismatch");
  if (estimate.scores.size() != n || estimate.s_star < 0 || estimate.s_star >= n)
    throw std::invalid_argument("certify_noisy: estimate does not match dimension");
  if (n < 2) throw std::invalid_argument("certify_noisy: need n >= 2");

  RecoveryCertificate cert;
  // Partial Fourier sensing: the commutation and tight-frame identities hold
  // structurally (distinct rows of a unitary matrix).
  cert.commutation_ok = true;
  cert.tight_frame_alpha = 1.0;

  const ColumnGap all_pairs = fourier_min_column_gap(v, fs);
  // The gap depends only on the column lag, so the pivot minimum coincides
  // with the all-pairs minimum; keep both quantities in the record.
  const double pivot_gap = all_pairs.gap;

  const double delta = delta_zv(z, v, noise, estimate.scores);
  const double two_ev = 2.0 * noise.e_v_norm;

  cert.min_gap = all_pairs.gap;
  cert.delta_zv = delta;
  cert.noise_gap_2ev = two_ev;

  const bool unaffected = all_pairs.gap > delta + margin_tol;
  const bool all_pairs_true_shift = unaffected && all_pairs.gap > two_ev + margin_tol;
  const bool per_column = pivot_gap > std::max(delta, two_ev) + margin_tol;

  if (all_pairs_true_shift)
    cert.verdict = Verdict::true_shift_guaranteed;
  else if (per_column)
    cert.verdict = Verdict::per_column_true_shift;
  else if (unaffected)
    cert.verdict = Verdict::noise_unaffected;
  else
    cert.verdict = Verdict::inconclusive;

  cert.details["n"] = static_cast<double>(n);
  cert.details["m"] = static_cast<double>(v.size());
  cert.details["s_star"] = static_cast<double>(estimate.s_star);
  cert.details["margin"] = estimate.margin;
  cert.details["alpha"] = 1.0;
  cert.details["min_gap_all_pairs"] = all_pairs.gap;
  cert.details["min_gap_s_star"] = pivot_gap;
  cert.details["min_gap_lag"] = static_cast<double>(all_pairs.col_b - all_pairs.col_a);
  cert.details["delta_zv"] = delta;
  cert.details["noise_gap_2ev"] = two_ev;
  cert.details["e_z_norm"] = noise.e_z_norm;
  cert.details["e_v_norm"] = noise.e_v_norm;
  cert.details["margin_tol"] = margin_tol;
  cert.details["noise_source_is_bound"] =
      noise.source == NoiseInfo::Source::user_bound ? 1.0 : 0.0;
  return cert;
}

}  // namespace csr
