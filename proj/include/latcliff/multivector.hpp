#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcliff {

using scalar_t = std::complex<double>;
using mask_t = std::uint32_t;

/// Generator signature of a real Clifford algebra.
///
/// Generators are indexed 1..p+q: the first p square to -1, the remaining
/// q square to +1.  The two instances used throughout are the
/// negative-definite algebra acting on field values (p = n, q = 0) and the
/// split algebra of endomorphisms (p = q = n).
struct Signature {
  int p = 0;  ///< generators squaring to -1 (indices 1..p)
  int q = 0;  ///< generators squaring to +1 (indices p+1..p+q)

  Signature() = default;
  Signature(int p_minus, int q_plus) : p(p_minus), q(q_plus) {
    if (p < 0 || q < 0 || p + q > 12)
      throw std::invalid_argument("Signature: need p,q >= 0 and p+q <= 12");
  }

  static Signature neg_definite(int n) { return Signature(n, 0); }
  static Signature split(int n) { return Signature(n, n); }

  int dim() const { return p + q; }
  std::size_t blade_count() const { return std::size_t{1} << dim(); }
  mask_t minus_block() const { return (p == 0) ? 0u : ((mask_t{1} << p) - 1u); }

  /// Square of generator j (1-based): -1 for j <= p, +1 otherwise.
  int square_of(int j) const {
    if (j < 1 || j > dim()) throw std::invalid_argument("generator index out of range");
    return j <= p ? -1 : +1;
  }

  bool operator==(const Signature&) const = default;
};

/// Sign from reordering the juxtaposition e_A e_B into ascending index
/// order: (-1)^{#{(i,j) : i in A, j in B, i > j}}.
inline int reorder_sign(mask_t a, mask_t b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

/// Product of two basis blades: resulting mask is a ^ b, sign combines the
/// reorder sign with the squares of repeated generators.
inline std::pair<mask_t, int> blade_product(const Signature& sig, mask_t a, mask_t b) {
  int sign = reorder_sign(a, b);
  const int negs = std::popcount(a & b & sig.minus_block());
  if (negs & 1) sign = -sign;
  return {static_cast<mask_t>(a ^ b), sign};
}

inline int blade_grade(mask_t m) { return std::popcount(m); }

/// Blade sign of the main involution: e_j -> -e_j for j <= p, fixed above.
inline int main_involution_sign(const Signature& sig, mask_t m) {
  return (std::popcount(m & sig.minus_block()) & 1) ? -1 : 1;
}

/// Blade sign of reversion: (-1)^{r(r-1)/2} with r the grade.
inline int reversion_sign(mask_t m) {
  const int r = blade_grade(m);
  return ((r * (r - 1) / 2) & 1) ? -1 : 1;
}

/// Dense multivector over the blade basis of Cl(q,p), complex-capable.
class Multivector {
 public:
  explicit Multivector(Signature sig)
      : sig_(sig), c_(sig.blade_count(), scalar_t{0.0, 0.0}) {}

  static Multivector scalar(Signature sig, scalar_t v) {
    Multivector out(sig);
    out.c_[0] = v;
    return out;
  }

  /// Basis vector e_j, 1-based index.
  static Multivector generator(Signature sig, int j) {
    if (j < 1 || j > sig.dim()) throw std::invalid_argument("generator index out of range");
    Multivector out(sig);
    out.c_[mask_t{1} << (j - 1)] = 1.0;
    return out;
  }

  static Multivector blade(Signature sig, mask_t m, scalar_t v = 1.0) {
    Multivector out(sig);
    out.coeff(m) = v;
    return out;
  }

  const Signature& sig() const { return sig_; }
  std::size_t size() const { return c_.size(); }

  scalar_t& coeff(mask_t m) {
    if (m >= c_.size()) throw std::invalid_argument("blade mask out of range");
    return c_[m];
  }
  scalar_t coeff(mask_t m) const {
    if (m >= c_.size()) throw std::invalid_argument("blade mask out of range");
    return c_[m];
  }
  scalar_t operator[](mask_t m) const { return c_[m]; }

  const std::vector<scalar_t>& coeffs() const { return c_; }

  Multivector& operator+=(const Multivector& o) {
    check_sig(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_sig(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(scalar_t s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, scalar_t s) { return a *= s; }
  friend Multivector operator*(scalar_t s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= scalar_t{-1.0}; }

  void check_sig(const Multivector& o) const {
    if (!(sig_ == o.sig_)) throw std::invalid_argument("signature mismatch");
  }

  friend Multivector geometric_product(const Multivector&, const Multivector&);

 private:
  Signature sig_;
  std::vector<scalar_t> c_;
};

namespace detail {

/// Cached blade-sign tables for the small algebras; the result mask is
/// always i ^ j, so only the sign needs a lookup.
inline const signed char* product_sign_table(const Signature& sig) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::vector<signed char>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& tab = cache[{sig.p, sig.q}];
  if (tab.empty()) {
    const std::size_t n = sig.blade_count();
    tab.resize(n * n);
    for (mask_t i = 0; i < n; ++i)
      for (mask_t j = 0; j < n; ++j)
        tab[(std::size_t{i} << sig.dim()) | j] =
            static_cast<signed char>(blade_product(sig, i, j).second);
  }
  return tab.data();
}

}  // namespace detail

/// Associative geometric product; distinct generators anticommute and
/// repeated ones contract to their signature square.
inline Multivector geometric_product(const Multivector& a, const Multivector& b) {
  a.check_sig(b);
  Multivector out(a.sig());
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  const int d = a.sig().dim();
  if (d <= 9) {
    const signed char* tab = detail::product_sign_table(a.sig());
    auto& co = out.c_;
    for (mask_t i = 0; i < ca.size(); ++i) {
      const scalar_t ai = ca[i];
      if (ai == scalar_t{}) continue;
      const signed char* row = tab + (std::size_t{i} << d);
      for (mask_t j = 0; j < cb.size(); ++j) {
        const scalar_t bj = cb[j];
        if (bj == scalar_t{}) continue;
        co[i ^ j] += static_cast<double>(row[j]) * ai * bj;
      }
    }
    return out;
  }
  for (mask_t i = 0; i < ca.size(); ++i) {
    const scalar_t ai = ca[i];
    if (ai == scalar_t{}) continue;
    for (mask_t j = 0; j < cb.size(); ++j) {
      const scalar_t bj = cb[j];
      if (bj == scalar_t{}) continue;
      const auto [m, s] = blade_product(a.sig(), i, j);
      out.coeff(m) += static_cast<double>(s) * ai * bj;
    }
  }
  return out;
}

inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

/// Keeps the grade-r part, zeroing everything else.
inline Multivector grade_project(const Multivector& a, int r) {
  if (r < 0 || r > a.sig().dim()) throw std::invalid_argument("grade out of range");
  Multivector out(a.sig());
  for (mask_t m = 0; m < a.size(); ++m)
    if (blade_grade(m) == r) out.coeff(m) = a[m];
  return out;
}

/// Main involution a -> a': algebra homomorphism negating the generators
/// that square to -1 and fixing the rest.
inline Multivector main_involution(const Multivector& a) {
  Multivector out(a.sig());
  for (mask_t m = 0; m < a.size(); ++m)
    out.coeff(m) = static_cast<double>(main_involution_sign(a.sig(), m)) * a[m];
  return out;
}

/// Reversion a -> a*: anti-homomorphism fixing all generators.
inline Multivector reversion(const Multivector& a) {
  Multivector out(a.sig());
  for (mask_t m = 0; m < a.size(); ++m)
    out.coeff(m) = static_cast<double>(reversion_sign(m)) * a[m];
  return out;
}

/// Dagger conjugation a -> (a')* = (a*)'.
inline Multivector dagger(const Multivector& a) {
  Multivector out(a.sig());
  for (mask_t m = 0; m < a.size(); ++m) {
    const int s = main_involution_sign(a.sig(), m) * reversion_sign(m);
    out.coeff(m) = static_cast<double>(s) * a[m];
  }
  return out;
}

inline double max_abs(const Multivector& a) {
  double best = 0.0;
  for (const auto& v : a.coeffs()) best = std::max(best, std::abs(v));
  return best;
}

inline double max_abs_diff(const Multivector& a, const Multivector& b) {
  a.check_sig(b);
  double best = 0.0;
  for (mask_t m = 0; m < a.size(); ++m) best = std::max(best, std::abs(a[m] - b[m]));
  return best;
}

inline std::string blade_name(mask_t m) {
  if (m == 0) return "1";
  std::string s;
  for (int j = 0; j < 32; ++j)
    if (m & (mask_t{1} << j)) s += "e" + std::to_string(j + 1);
  return s;
}

}  // namespace latcliff
