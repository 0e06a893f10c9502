#pragma once

#include "csr/types.hpp"

namespace csr {

// y[t] = x[(t - l) mod n]. A shift by 1 delays the signal:
// cyclic_shift([1,2,3,4], 1) == [4,1,2,3]. All DFT phase signs downstream
// follow from this convention.
Signal cyclic_shift(const Signal& x, const ShiftIndex& l);

// Dense n x n permutation matrix with shift_matrix(n, l) * x.values() equal to
// cyclic_shift(x, l).values() for every x.
Eigen::MatrixXd shift_matrix(int n, const ShiftIndex& l);

// (1/sqrt(n)) * sum_t x[t] e^{-2 pi j k t / n}, evaluated by direct summation.
// Matches row k of the unitary-normalized partial Fourier sensing matrix.
cplx dft_coefficient(const Signal& x, int k);

// scores[s] = Re sum_t conj(y[t]) x[(t-s) mod n], the direct O(n^2) path.
ScoreVector classical_scores_direct(const Signal& x, const Signal& y,
                                    OpCount* count = nullptr);

// Same scores via FFT-based circular correlation.
ScoreVector classical_scores_fft(const Signal& x, const Signal& y);

// Uncompressed estimator: argmax_s Re<y, D^s x>. Direct evaluation; its
// multiply count is n^2.
ShiftEstimate classical_estimate(const Signal& x, const Signal& y,
                                 OpCount* count = nullptr);

}  // namespace csr
