#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "csr/estimators.hpp"

namespace csr {

// l2 norms of the measurement noise. In simulation the realized noise is
// known; for real data the caller supplies bounds and certificates become
// conservative.
struct NoiseInfo {
  enum class Source { known_realization, user_bound };

  double e_z_norm = 0.0;
  double e_v_norm = 0.0;
  Source source = Source::known_realization;

  NoiseInfo() = default;
  NoiseInfo(double ez, double ev, Source src) : e_z_norm(ez), e_v_norm(ev), source(src) {
    if (!(ez >= 0.0) || !(ev >= 0.0)) throw std::invalid_argument("NoiseInfo: norms must be >= 0");
  }
};

// Ordered by strength of the delivered guarantee. per_column_true_shift and
// true_shift_guaranteed both certify the true shift; the all-pairs variant is
// the stronger statement and wins when both fire.
enum class Verdict {
  inconclusive = 0,
  noise_unaffected = 1,
  per_column_true_shift = 2,
  true_shift_guaranteed = 3,
  noise_free_guaranteed = 4,
};

const char* to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view name);

// True when the verdict certifies that the estimate equals the true shift.
bool certifies_true_shift(Verdict v);
// True when the verdict certifies that noise did not change the estimate.
bool certifies_noise_invariance(Verdict v);

// Machine-checkable record of which recovery conditions hold for a concrete
// instance, with every quantity that produced the verdict.
struct RecoveryCertificate {
  bool commutation_ok = false;
  std::optional<double> tight_frame_alpha;
  double min_gap = 0.0;
  std::optional<double> delta_zv;
  std::optional<double> noise_gap_2ev;
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, double> details;
};

// A-priori certificate from the sensing matrix and the reference signal:
// commutation, tight frame, and all-pairs column separation of A X with X the
// shifted dictionary of x. Verdict noise_free_guaranteed iff all three hold.
RecoveryCertificate certify_noise_free(const SensingMatrix& A, const Signal& x,
                                       double tol = kDefaultTol);

// True iff some p has |coeffs[p]| > zero_tol and gcd(k_p, n) == 1. Sufficient
// for the compressed Fourier dictionary to have distinct columns.
bool coprime_condition(const FrequencySet& fs, const Eigen::VectorXcd& coeffs,
                       double zero_tol = kDefaultTol);

// Noise threshold
//   delta = ||e_z|| + ||e_v|| + sqrt(||v||^2 + ||z||^2 - 2 max_s scores[s]),
// with the radicand clamped at zero. If every pair of compressed-dictionary
// columns is separated by more than delta, noise cannot change the argmax.
double delta_zv(const Eigen::VectorXcd& z, const Eigen::VectorXcd& v,
                const NoiseInfo& noise, const FrequencySet& fs);
// Same, reusing an already-computed fourier_test score vector for max_s.
double delta_zv(const Eigen::VectorXcd& z, const Eigen::VectorXcd& v,
                const NoiseInfo& noise, const ScoreVector& scores);

// Certificate for an estimate computed from noisy Fourier measurements.
// Checks, in order of strength:
//   noise_unaffected:       all-pairs gap > delta_zv
//   per_column_true_shift:  gap from the s*-column > max(delta_zv, 2||e_v||)
//   true_shift_guaranteed:  all-pairs gap > delta_zv and > 2||e_v||
// Strict inequalities; margin_tol widens them when > 0. Dictionary columns
// are derived from v alone via the diagonal phase structure.
RecoveryCertificate certify_noisy(const ShiftEstimate& estimate,
                                  const Eigen::VectorXcd& z, const Eigen::VectorXcd& v,
                                  const NoiseInfo& noise, const FrequencySet& fs,
                                  double margin_tol = 0.0);

}  // namespace csr
