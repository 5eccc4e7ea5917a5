#pragma once

// Independent reference implementations used only by the tests.  These stay
// deliberately naive so they cannot share a bug with the library paths they
// check.

#include <cmath>
#include <vector>

#include "latcliff/multivector.hpp"

namespace oracles {

/// Blade product by explicit list manipulation: concatenate the generator
/// indices, bubble-sort counting transpositions, contract equal neighbours
/// with the signature square.
inline std::pair<latcliff::mask_t, int> naive_blade_product(const latcliff::Signature& sig,
                                                            latcliff::mask_t a,
                                                            latcliff::mask_t b) {
  std::vector<int> gens;
  for (int j = 1; j <= sig.dim(); ++j)
    if (a & (latcliff::mask_t{1} << (j - 1))) gens.push_back(j);
  for (int j = 1; j <= sig.dim(); ++j)
    if (b & (latcliff::mask_t{1} << (j - 1))) gens.push_back(j);

  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
      if (gens[i] > gens[i + 1]) {
        std::swap(gens[i], gens[i + 1]);
        sign = -sign;
        changed = true;
      } else if (gens[i] == gens[i + 1]) {
        sign *= sig.square_of(gens[i]);
        gens.erase(gens.begin() + i, gens.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }

  latcliff::mask_t m = 0;
  for (int g : gens) m |= latcliff::mask_t{1} << (g - 1);
  return {m, sign};
}

inline latcliff::Multivector naive_product(const latcliff::Multivector& x,
                                           const latcliff::Multivector& y) {
  latcliff::Multivector out(x.sig());
  for (latcliff::mask_t i = 0; i < x.size(); ++i)
    for (latcliff::mask_t j = 0; j < y.size(); ++j) {
      const auto [m, s] = naive_blade_product(x.sig(), i, j);
      out.coeff(m) += static_cast<double>(s) * x[i] * y[j];
    }
  return out;
}

/// Three-term recurrence T_{k+1} = 2 lam T_k - T_{k-1}.
inline double cheb_recurrence(long long k, double lam) {
  const unsigned long long kk = static_cast<unsigned long long>(k < 0 ? -k : k);
  double prev = 1.0;
  if (kk == 0) return prev;
  double cur = lam;
  for (unsigned long long i = 1; i < kk; ++i) {
    const double next = 2.0 * lam * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Terminating hypergeometric series 2F1(-k, k; 1/2; t) from the Pochhammer
/// form; exactly k+1 terms.
inline double hyp2f1_terminating(int k, double t) {
  double sum = 0.0;
  double poch_neg = 1.0;   // (-k)_s
  double poch_pos = 1.0;   // (k)_s
  double poch_half = 1.0;  // (1/2)_s
  double factorial = 1.0;
  double tpow = 1.0;
  for (int s = 0; s <= k; ++s) {
    sum += poch_neg * poch_pos / (poch_half * factorial) * tpow;
    poch_neg *= static_cast<double>(-k + s);
    poch_pos *= static_cast<double>(k + s);
    poch_half *= 0.5 + static_cast<double>(s);
    factorial *= static_cast<double>(s + 1);
    tpow *= t;
  }
  return sum;
}

}  // namespace oracles
