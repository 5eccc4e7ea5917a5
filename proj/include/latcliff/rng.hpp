#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "latcliff/multivector.hpp"

namespace latcliff {

/// Deterministic random source for the verification suites.  mt19937_64 is
/// fully specified by the standard; normals come from an explicit
/// Box-Muller transform so identical seeds give identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in (0, 1].
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Multivector with independent standard normal coefficients; imaginary
/// parts are zero unless complex coefficients are requested.
inline Multivector random_multivector(Rng& rng, Signature sig, bool complex_coeffs = false) {
  Multivector out(sig);
  for (mask_t m = 0; m < out.size(); ++m) {
    const double re = rng.normal();
    const double im = complex_coeffs ? rng.normal() : 0.0;
    out.coeff(m) = scalar_t{re, im};
  }
  return out;
}

}  // namespace latcliff
