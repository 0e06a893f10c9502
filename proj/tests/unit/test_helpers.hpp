#pragma once

#include <numbers>

#include "csr/csr.hpp"
#include "csr/rng.hpp"

namespace csrtest {

inline csr::Signal random_real_signal(int n, csr::TrialRng& rng) {
  Eigen::VectorXcd v(n);
  for (int t = 0; t < n; ++t) v[t] = csr::cplx{rng.uniform01(), 0.0};
  return csr::Signal(std::move(v));
}

inline csr::Signal random_complex_signal(int n, csr::TrialRng& rng) {
  Eigen::VectorXcd v(n);
  for (int t = 0; t < n; ++t) v[t] = csr::cplx{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
  return csr::Signal(std::move(v));
}

inline Eigen::VectorXcd random_complex_vector(int m, csr::TrialRng& rng) {
  Eigen::VectorXcd v(m);
  for (int p = 0; p < m; ++p) v[p] = csr::cplx{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
  return v;
}

// e^{-2 pi j k t / n] without the modular-reduction trick used by the library.
inline csr::cplx raw_unit_root(int k, int t, int n) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) *
                       static_cast<double>(t) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace csrtest
