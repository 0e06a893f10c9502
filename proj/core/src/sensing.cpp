#include "csr/sensing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace csr {

namespace {

// e^{-2 pi j k t / n} with the integer product reduced mod n first.
cplx unit_root(long long k, long long t, int n) {
  long long r = (k * t) % n;
  if (r < 0) r += n;
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / n;
  return std::polar(1.0, angle);
}

}  // namespace

FrequencySet::FrequencySet(int n, std::vector<int> ks) : n_(n), ks_(std::move(ks)) {
  if (n_ < 1) throw std::invalid_argument("FrequencySet: n must be >= 1");
  if (ks_.empty()) throw std::invalid_argument("FrequencySet: need at least one index");
  if (ks_.size() > static_cast<std::size_t>(n_))
    throw std::invalid_argument("FrequencySet: more indices than dimensions");
  for (int k : ks_) {
    if (k < 0 || k >= n_) throw std::invalid_argument("FrequencySet: index out of range");
  }
  std::vector<int> sorted = ks_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("FrequencySet: indices must be distinct");
}

FrequencySet FrequencySet::full(int n) {
  std::vector<int> ks(n);
  std::iota(ks.begin(), ks.end(), 0);
  return FrequencySet(n, std::move(ks));
}

FrequencySet FrequencySet::parse(const std::string& list, int n) {
  std::vector<int> ks;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int k = 0;
    try {
      k = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("FrequencySet: cannot parse '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size())
      throw std::invalid_argument("FrequencySet: cannot parse '" + item + "'");
    ks.push_back(k);
  }
  if (ks.empty()) throw std::invalid_argument("FrequencySet: empty list");
  return FrequencySet(n, std::move(ks));
}

bool FrequencySet::contains_coprime() const {
  for (int k : ks_) {
    if (std::gcd(k, n_) == 1) return true;
  }
  return false;
}

SensingMatrix::SensingMatrix(Eigen::MatrixXcd entries, Kind kind, std::optional<FrequencySet> fs)
    : entries_(std::move(entries)), kind_(kind), fs_(std::move(fs)) {
  if (entries_.rows() < 1 || entries_.cols() < 1)
    throw std::invalid_argument("SensingMatrix: empty");
  if (entries_.rows() > entries_.cols())
    throw std::invalid_argument("SensingMatrix: requires m <= n");
  if (!entries_.allFinite()) throw std::invalid_argument("SensingMatrix: non-finite entry");
}

SensingMatrix SensingMatrix::generic(Eigen::MatrixXcd entries) {
  return SensingMatrix(std::move(entries), Kind::generic, std::nullopt);
}

SensingMatrix partial_fourier(const FrequencySet& fs) {
  const int n = fs.ambient_dim();
  const int m = fs.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd A(m, n);
  for (int p = 0; p < m; ++p) {
    const int k = fs.indices()[p];
    for (int t = 0; t < n; ++t) {
      A(p, t) = scale * unit_root(k, t, n);
    }
  }
  return SensingMatrix(std::move(A), SensingMatrix::Kind::partial_fourier, fs);
}

Eigen::VectorXcd measure(const SensingMatrix& A, const Signal& x) {
  if (A.cols() != x.size()) throw std::invalid_argument("measure: dimension mismatch");
  return A.entries() * x.values();
}

Eigen::VectorXcd measure(const FrequencySet& fs, const Signal& x) {
  const int n = fs.ambient_dim();
  if (n != x.size()) throw std::invalid_argument("measure: dimension mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::VectorXcd out(fs.size());
  for (int p = 0; p < fs.size(); ++p) {
    const int k = fs.indices()[p];
    cplx acc{0.0, 0.0};
    for (int t = 0; t < n; ++t) acc += x[t] * unit_root(k, t, n);
    out[p] = scale * acc;
  }
  return out;
}

CommutationResult commutation_check(const SensingMatrix& A, double tol) {
  const int n = A.cols();
  const Eigen::MatrixXcd G = A.entries().adjoint() * A.entries();
  double worst = 0.0;
  for (int s = 1; s <= n; ++s) {
    for (int t = 0; t < n; ++t) {
      const int ts = (t - s % n + n) % n;
      for (int u = 0; u < n; ++u) {
        const int us = (u + s) % n;
        // (G D^s)(t,u) = G(t, (u+s) mod n); (D^s G)(t,u) = G((t-s) mod n, u).
        const double dev = std::abs(G(t, us) - G(ts, u));
        if (dev > worst) worst = dev;
      }
    }
  }
  return CommutationResult{worst <= tol, worst};
}

std::optional<double> tight_frame_check(const SensingMatrix& A, double tol) {
  const int m = A.rows();
  const Eigen::MatrixXcd P = A.entries() * A.entries().adjoint();
  const double tr = P.trace().real();
  if (!(tr > 0.0)) return std::nullopt;
  const double alpha = static_cast<double>(m) / tr;
  const Eigen::MatrixXcd R = alpha * P - Eigen::MatrixXcd::Identity(m, m);
  if (R.cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return alpha;
}

Eigen::MatrixXcd shifted_dictionary(const Signal& x) {
  const int n = x.size();
  Eigen::MatrixXcd X(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      X(t, s) = x[(t - s + n) % n];
    }
  }
  return X;
}

Eigen::MatrixXcd compress_dictionary(const SensingMatrix& A, const Eigen::MatrixXcd& X) {
  if (A.cols() != X.rows()) throw std::invalid_argument("compress_dictionary: dimension mismatch");
  return A.entries() * X;
}

ColumnGap min_column_gap(const Eigen::MatrixXcd& M) {
  const int n = static_cast<int>(M.cols());
  if (n < 2) throw std::invalid_argument("min_column_gap: need at least two columns");
  ColumnGap best{std::numeric_limits<double>::infinity(), 0, 1};
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double gap = (M.col(a) - M.col(b)).norm();
      if (gap < best.gap) best = ColumnGap{gap, a, b};
    }
  }
  return best;
}

ColumnGap min_column_gap(const Eigen::MatrixXcd& M, int pivot) {
  const int n = static_cast<int>(M.cols());
  if (n < 2) throw std::invalid_argument("min_column_gap: need at least two columns");
  if (pivot < 0 || pivot >= n) throw std::invalid_argument("min_column_gap: pivot out of range");
  ColumnGap best{std::numeric_limits<double>::infinity(), pivot, pivot};
  for (int b = 0; b < n; ++b) {
    if (b == pivot) continue;
    const double gap = (M.col(pivot) - M.col(b)).norm();
    if (gap < best.gap) best = ColumnGap{gap, pivot, b};
  }
  return best;
}

double fourier_column_gap(const Eigen::VectorXcd& coeffs, const FrequencySet& fs, int lag) {
  const int n = fs.ambient_dim();
  if (coeffs.size() != fs.size())
    throw std::invalid_argument("fourier_column_gap: coefficient count mismatch");
  double acc = 0.0;
  for (int p = 0; p < fs.size(); ++p) {
    long long r = (static_cast<long long>(fs.indices()[p]) * lag) % n;
    if (r < 0) r += n;
    const double s = std::sin(std::numbers::pi * static_cast<double>(r) / n);
    acc += 4.0 * std::norm(coeffs[p]) * s * s;
  }
  return std::sqrt(acc);
}

ColumnGap fourier_min_column_gap(const Eigen::VectorXcd& coeffs, const FrequencySet& fs) {
  const int n = fs.ambient_dim();
  if (n < 2) throw std::invalid_argument("fourier_min_column_gap: need n >= 2");
  ColumnGap best{std::numeric_limits<double>::infinity(), 0, 1};
  for (int d = 1; d < n; ++d) {
    const double gap = fourier_column_gap(coeffs, fs, d);
    if (gap < best.gap) best = ColumnGap{gap, 0, d};
  }
  return best;
}

}  // namespace csr
