#include "csr/estimators.hpp"

#include <cmath>
#include <numbers>

namespace csr {

namespace {

void require_consistent(const MeasurementPair& mp, const SensingMatrix& A) {
  mp.validate();
  if (A.rows() != mp.z.size() || A.cols() != mp.n)
    throw std::invalid_argument("measurement pair does not match sensing matrix");
}

// Rows of W rotated: out row t = W row (t - s) mod n, i.e. D^s W.
Eigen::MatrixXcd shifted_rows(const Eigen::MatrixXcd& W, int s) {
  const int n = static_cast<int>(W.rows());
  Eigen::MatrixXcd out(n, W.cols());
  for (int t = 0; t < n; ++t) out.row(t) = W.row((t - s + n) % n);
  return out;
}

}  // namespace

MeasurementPair MeasurementPair::fourier(Eigen::VectorXcd z, Eigen::VectorXcd v,
                                         FrequencySet fs) {
  MeasurementPair mp;
  mp.n = fs.ambient_dim();
  mp.z = std::move(z);
  mp.v = std::move(v);
  mp.fs = std::move(fs);
  mp.validate();
  return mp;
}

void MeasurementPair::validate() const {
  if (z.size() < 1 || z.size() != v.size())
    throw std::invalid_argument("MeasurementPair: z and v must have equal positive length");
  if (n < z.size()) throw std::invalid_argument("MeasurementPair: n must be >= m");
  if (!z.allFinite() || !v.allFinite())
    throw std::invalid_argument("MeasurementPair: entries must be finite");
  if (fs) {
    if (fs->ambient_dim() != n || fs->size() != z.size())
      throw std::invalid_argument("MeasurementPair: frequency set does not match measurements");
  }
}

std::vector<int> equality_test(const MeasurementPair& mp, const SensingMatrix& A, double tol) {
  require_consistent(mp, A);
  const int n = mp.n;
  const Eigen::VectorXcd wz = A.entries().adjoint() * mp.z;
  const Eigen::VectorXcd wv = A.entries().adjoint() * mp.v;
  std::vector<int> accepted;
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
      acc += std::norm(wz[t] - wv[(t - s + n) % n]);
    }
    if (std::sqrt(acc) <= tol) accepted.push_back(s);
  }
  return accepted;
}

ShiftEstimate compressed_test(const MeasurementPair& mp, const SensingMatrix& A,
                              OpCount* count) {
  require_consistent(mp, A);
  const int n = mp.n;
  const int m = static_cast<int>(mp.z.size());
  const Eigen::MatrixXcd W = A.entries().adjoint();  // n x m

  ScoreVector scores(n);
  for (int s = 0; s < n; ++s) {
    const Eigen::MatrixXcd Dbar = A.entries() * shifted_rows(W, s);  // A D^s A*
    scores[s] = std::real(mp.z.dot(Dbar * mp.v));
  }
  if (count) {
    count->complex_multiplies +=
        static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(m) * m * n + m * m + m);
  }
  return estimate_from_scores(std::move(scores));
}

ShiftEstimate fourier_test(const MeasurementPair& mp, OpCount* count) {
  mp.validate();
  if (!mp.fs) throw std::invalid_argument("fourier_test: frequency set required");
  const int n = mp.n;
  const int m = static_cast<int>(mp.z.size());

  std::uint64_t mults = 0;
  Eigen::VectorXcd w(m);
  for (int p = 0; p < m; ++p) {
    w[p] = std::conj(mp.z[p]) * mp.v[p];
    ++mults;
  }
  Eigen::VectorXcd base(m), phase(m);
  for (int p = 0; p < m; ++p) {
    const double angle = -2.0 * std::numbers::pi * mp.fs->indices()[p] / n;
    base[p] = std::polar(1.0, angle);
    phase[p] = cplx{1.0, 0.0};
  }

  ScoreVector scores(n);
  for (int s = 0; s < n; ++s) {
    if (s > 0) {
      for (int p = 0; p < m; ++p) {
        phase[p] *= base[p];
        ++mults;
      }
    }
    double acc = 0.0;
    for (int p = 0; p < m; ++p) {
      acc += std::real(w[p] * phase[p]);
      ++mults;
    }
    scores[s] = acc;
  }
  if (count) count->complex_multiplies += mults;  // m + m(n-1) + mn = 2mn
  return estimate_from_scores(std::move(scores));
}

ShiftEstimate l0_oracle(const Signal& y, const Signal& x) {
  const int n = x.size();
  if (y.size() != n) throw std::invalid_argument("l0_oracle: length mismatch");
  ScoreVector scores(n);
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int t = 0; t < n; ++t) acc += std::norm(y[t] - x[(t - s + n) % n]);
    scores[s] = -acc;
  }
  return estimate_from_scores(std::move(scores));
}

ShiftEstimate l0_oracle(const Eigen::VectorXcd& zy, const SensingMatrix& A, const Signal& x) {
  if (A.cols() != x.size() || A.rows() != zy.size())
    throw std::invalid_argument("l0_oracle: dimension mismatch");
  const int n = x.size();
  ScoreVector scores(n);
  for (int s = 0; s < n; ++s) {
    Eigen::VectorXcd shifted(n);
    for (int t = 0; t < n; ++t) shifted[t] = x[(t - s + n) % n];
    scores[s] = -(zy - A.entries() * shifted).squaredNorm();
  }
  return estimate_from_scores(std::move(scores));
}

ShiftEstimate l0_oracle(const MeasurementPair& mp) {
  mp.validate();
  if (!mp.fs) throw std::invalid_argument("l0_oracle: frequency set required");
  const int n = mp.n;
  const int m = static_cast<int>(mp.z.size());
  ScoreVector scores(n);
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int p = 0; p < m; ++p) {
      long long r = (static_cast<long long>(mp.fs->indices()[p]) * s) % n;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / n;
      acc += std::norm(mp.z[p] - mp.v[p] * std::polar(1.0, angle));
    }
    scores[s] = -acc;
  }
  return estimate_from_scores(std::move(scores));
}

}  // namespace csr
