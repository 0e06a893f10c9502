#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace csr {

using cplx = std::complex<double>;

// Default absolute tolerance for the exact-in-theory identities (commutation,
// tight frame, score agreement). Only absorbs floating-point error.
inline constexpr double kDefaultTol = 1e-9;

// Margins at or below this (relative to the score scale) are treated as ties.
inline constexpr double kDegeneracyTol = 1e-12;

// Tally of complex multiplications spent inside an estimator call.
struct OpCount {
  std::uint64_t complex_multiplies = 0;
};

// Cyclic shift index, normalized into [0, n) on construction.
class ShiftIndex {
 public:
  ShiftIndex(std::int64_t raw, int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("ShiftIndex: modulus must be >= 1");
    std::int64_t r = raw % n;
    if (r < 0) r += n;
    s_ = static_cast<int>(r);
  }

  int value() const { return s_; }
  int modulus() const { return n_; }

  friend bool operator==(const ShiftIndex& a, const ShiftIndex& b) {
    return a.s_ == b.s_ && a.n_ == b.n_;
  }

 private:
  int s_;
  int n_;
};

// Fixed-length complex signal. Length is set at construction and every entry
// must be finite.
class Signal {
 public:
  explicit Signal(Eigen::VectorXcd values) : values_(std::move(values)) {
    if (values_.size() < 1) throw std::invalid_argument("Signal: length must be >= 1");
    if (!values_.allFinite()) throw std::invalid_argument("Signal: entries must be finite");
  }

  static Signal from_real(const Eigen::VectorXd& values) {
    return Signal(values.cast<cplx>());
  }

  int size() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXcd& values() const { return values_; }
  const cplx& operator[](int t) const { return values_[t]; }

 private:
  Eigen::VectorXcd values_;
};

// One real score per candidate shift s = 0..n-1.
using ScoreVector = Eigen::VectorXd;

// Argmax result with the full per-shift score vector. `margin` is the best
// score minus the runner-up; `degenerate` flags margins at numerical-noise
// level, where the hypothesis set is effectively unresolved.
struct ShiftEstimate {
  int s_star = 0;
  ScoreVector scores;
  double margin = 0.0;
  bool degenerate = false;
};

// Argmax with ties broken toward the smallest shift index.
ShiftEstimate estimate_from_scores(ScoreVector scores);

}  // namespace csr
