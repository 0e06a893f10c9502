#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csr/types.hpp"

namespace csr {

// Ordered set of m distinct frequency indices k_1..k_m in {0..n-1}.
class FrequencySet {
 public:
  FrequencySet(int n, std::vector<int> ks);

  // {0, 1, ..., n-1}
  static FrequencySet full(int n);

  // Comma-separated list, e.g. "1,3,7".
  static FrequencySet parse(const std::string& list, int n);

  int ambient_dim() const { return n_; }
  int size() const { return static_cast<int>(ks_.size()); }
  const std::vector<int>& indices() const { return ks_; }

  // True if some k_i is coprime to n.
  bool contains_coprime() const;

 private:
  int n_;
  std::vector<int> ks_;
};

// m x n compression operator. partial_fourier matrices are reconstructible
// from their FrequencySet; generic matrices are arbitrary.
class SensingMatrix {
 public:
  enum class Kind { partial_fourier, generic };

  static SensingMatrix generic(Eigen::MatrixXcd entries);

  Kind kind() const { return kind_; }
  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  const std::optional<FrequencySet>& frequencies() const { return fs_; }

 private:
  SensingMatrix(Eigen::MatrixXcd entries, Kind kind, std::optional<FrequencySet> fs);
  friend SensingMatrix partial_fourier(const FrequencySet& fs);

  Eigen::MatrixXcd entries_;
  Kind kind_;
  std::optional<FrequencySet> fs_;
};

// Entry (p, t) = (1/sqrt(n)) e^{-2 pi j k_p t / n}.
SensingMatrix partial_fourier(const FrequencySet& fs);

// z = A x, plain matrix-vector product.
Eigen::VectorXcd measure(const SensingMatrix& A, const Signal& x);

// Fast path for the Fourier case: m direct subset-DFT sums, no matrix.
Eigen::VectorXcd measure(const FrequencySet& fs, const Signal& x);

struct CommutationResult {
  bool ok = false;
  double worst_deviation = 0.0;
};

// max over s = 1..n of the entrywise max modulus of A*A D^s - D^s A*A.
// Exact (up to rounding) for any partial Fourier matrix.
CommutationResult commutation_check(const SensingMatrix& A, double tol = kDefaultTol);

// If A A* is within tol of a positive multiple of the identity, returns the
// multiplier alpha with alpha A A* = I; otherwise nullopt. alpha is estimated
// as m / trace(A A*) and then verified entrywise.
std::optional<double> tight_frame_check(const SensingMatrix& A, double tol = kDefaultTol);

// n x n matrix whose column s is cyclic_shift(x, s), s = 0..n-1.
Eigen::MatrixXcd shifted_dictionary(const Signal& x);

// A * X.
Eigen::MatrixXcd compress_dictionary(const SensingMatrix& A, const Eigen::MatrixXcd& X);

struct ColumnGap {
  double gap = 0.0;
  int col_a = 0;
  int col_b = 0;
};

// Smallest l2 distance between two distinct columns of M.
ColumnGap min_column_gap(const Eigen::MatrixXcd& M);

// Smallest l2 distance from column `pivot` to any other column.
ColumnGap min_column_gap(const Eigen::MatrixXcd& M, int pivot);

// Column gaps of the compressed Fourier dictionary built from per-frequency
// coefficients (column r has entries coeffs[p] e^{-2 pi j k_p r / n}):
//   gap(r1, r2)^2 = sum_p 4 |coeffs[p]|^2 sin^2(pi k_p (r1 - r2) / n),
// a function of the lag d = r1 - r2 only.
double fourier_column_gap(const Eigen::VectorXcd& coeffs, const FrequencySet& fs, int lag);

// Minimum of fourier_column_gap over lags 1..n-1. Because the gap depends
// only on the lag, this equals both the all-pairs minimum and the per-column
// minimum for every pivot.
ColumnGap fourier_min_column_gap(const Eigen::VectorXcd& coeffs, const FrequencySet& fs);

}  // namespace csr
