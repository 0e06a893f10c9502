#pragma once

#include <vector>

#include "csr/sensing.hpp"
#include "csr/signal.hpp"

namespace csr {

// Compressed measurements z = A y and v = A x (possibly noisy), plus the
// ambient dimension and, when Fourier-sampled, the frequency set.
struct MeasurementPair {
  Eigen::VectorXcd z;
  Eigen::VectorXcd v;
  int n = 0;
  std::optional<FrequencySet> fs;

  static MeasurementPair fourier(Eigen::VectorXcd z, Eigen::VectorXcd v, FrequencySet fs);
  void validate() const;
};

// Accepts every s with ||A*z - D^s A*v||_2 <= tol. Returns the accepted
// shifts in increasing order; may hold more than one element when the sensing
// matrix cannot separate hypotheses.
std::vector<int> equality_test(const MeasurementPair& mp, const SensingMatrix& A,
                               double tol = kDefaultTol);

// scores[s] = Re{ z* (A D^s A*) v } with the product matrices materialized.
// This is the reference form the scalar fast path must reproduce.
ShiftEstimate compressed_test(const MeasurementPair& mp, const SensingMatrix& A,
                              OpCount* count = nullptr);

// scores[s] = Re{ sum_i conj(z_i) v_i e^{-2 pi j k_i s / n} }. Costs exactly
// 2mn complex multiplications. Requires mp.fs.
ShiftEstimate fourier_test(const MeasurementPair& mp, OpCount* count = nullptr);

// Exhaustive one-hot dictionary search, the ground-truth oracle the fast
// tests are validated against. Scores are negated squared residuals, so the
// argmax is the residual minimizer.

// Uncompressed: residual[s] = ||y - D^s x||_2^2.
ShiftEstimate l0_oracle(const Signal& y, const Signal& x);

// Compressed with an explicit sensing matrix: residual[s] = ||zy - A D^s x||_2^2.
ShiftEstimate l0_oracle(const Eigen::VectorXcd& zy, const SensingMatrix& A, const Signal& x);

// Fourier-sampled measurements only: the dictionary column for shift s has
// entries v_p e^{-2 pi j k_p s / n}, so no time-domain signal is needed.
ShiftEstimate l0_oracle(const MeasurementPair& mp);

}  // namespace csr
