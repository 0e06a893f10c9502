#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace csr {

// One step of the splitmix64 sequence. Used only to expand seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Substream seed for (master, stream, index). Suites derive one substream per
// trial so serial and parallel runs consume identical random sequences.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64_next(s);
  s = a ^ (stream + 0x9E3779B97F4A7C15ULL);
  std::uint64_t b = splitmix64_next(s);
  s = b ^ (index + 0xD1B54A32D192ED03ULL);
  return splitmix64_next(s);
}

// mt19937_64 with explicitly coded uniform / Box-Muller transforms. The
// standard pins the raw generator sequence, and the transforms here avoid the
// implementation-defined std:: distributions, so draws are identical on every
// platform.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer on [lo, hi], inclusive, via rejection (unbiased).
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t u;
    do {
      u = engine_();
    } while (u >= limit);
    return lo + static_cast<int>(u % span);
  }

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // N(0,1) + j N(0,1); exactly one Box-Muller pair per call.
  std::complex<double> complex_normal() {
    has_spare_ = false;
    const double re = normal();
    const double im = spare_;
    has_spare_ = false;
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace csr
