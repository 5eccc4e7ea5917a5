#pragma once

#include "latcliff/multivector.hpp"

namespace latcliff {

namespace detail {
inline void require_neg_definite(const Multivector& a) {
  if (a.sig().q != 0)
    throw std::invalid_argument("operation defined on Cl(0,n) values only");
}
inline void require_axis(const Multivector& a, int j) {
  if (j < 1 || j > a.sig().dim()) throw std::invalid_argument("axis out of range");
}
}  // namespace detail

/// Left endomorphism E_j : a -> e_j a.
inline Multivector endo_left(int j, const Multivector& a) {
  detail::require_axis(a, j);
  return Multivector::generator(a.sig(), j) * a;
}

/// Right endomorphism E_{j+n} : a -> a' e_j.
inline Multivector endo_right(int j, const Multivector& a) {
  detail::require_axis(a, j);
  return main_involution(a) * Multivector::generator(a.sig(), j);
}

/// Dot product with a generator: e_j . a = -1/2 (e_j a - a' e_j).
/// Lowers grade by one on Cl(0,n).
inline Multivector dot_vector(int j, const Multivector& a) {
  detail::require_neg_definite(a);
  detail::require_axis(a, j);
  const Multivector ej = Multivector::generator(a.sig(), j);
  return (ej * a - main_involution(a) * ej) * scalar_t{-0.5};
}

/// Wedge product with a generator: e_j ^ a = 1/2 (e_j a + a' e_j).
/// Raises grade by one on Cl(0,n).
inline Multivector wedge_vector(int j, const Multivector& a) {
  detail::require_neg_definite(a);
  detail::require_axis(a, j);
  const Multivector ej = Multivector::generator(a.sig(), j);
  return (ej * a + main_involution(a) * ej) * scalar_t{0.5};
}

/// Pointwise Witt contraction e_j^+ (annihilation).
inline Multivector witt_lower(int j, const Multivector& a) { return dot_vector(j, a); }

/// Pointwise Witt extension e_j^- (creation).
inline Multivector witt_raise(int j, const Multivector& a) { return wedge_vector(j, a); }

/// Graded commutator [e_j^+, e_j^-] applied to a.  Acts as +1 on blades not
/// containing j and as -1 on blades containing it.
inline Multivector axis_commutator(int j, const Multivector& a) {
  return witt_lower(j, witt_raise(j, a)) - witt_raise(j, witt_lower(j, a));
}

/// Composition of the axis commutators over every axis.  On Cl(0,n) this
/// equals the main involution; the equality is asserted by test, not assumed.
inline Multivector involution_operator_K(const Multivector& a) {
  detail::require_neg_definite(a);
  Multivector out = a;
  for (int j = 1; j <= a.sig().dim(); ++j) out = axis_commutator(j, out);
  return out;
}

}  // namespace latcliff
