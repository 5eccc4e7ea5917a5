#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "latcliff/multivector.hpp"
#include "latcliff/rng.hpp"
#include "latcliff/witt.hpp"

namespace latcliff {

enum class Boundary { Shrinking, Periodic };

/// Composition reading for Witt symbols applied to lattice functions.
/// S1Pointwise: symbols act pointwise on values.  S2Module: each symbol
/// application also shifts the argument one step along its axis and applies
/// the main involution to the value, per the normal-ordering rule
/// e_j^{+-} f(x) = f(x -+ h e_j)' e_j^{+-}.
enum class Semantics { S1Pointwise, S2Module };

enum class MassTerm { Chi, K };

inline const char* to_string(Semantics s) {
  return s == Semantics::S1Pointwise ? "s1" : "s2";
}
inline const char* to_string(MassTerm m) { return m == MassTerm::Chi ? "chi" : "k"; }

/// Axis-aligned integer box, bounds inclusive.
struct Region {
  std::vector<int> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool empty() const {
    for (int i = 0; i < dim(); ++i)
      if (lo[i] > hi[i]) return true;
    return dim() == 0;
  }

  int extent(int i) const { return hi[i] - lo[i] + 1; }

  std::size_t site_count() const {
    if (empty()) return 0;
    std::size_t n = 1;
    for (int i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(extent(i));
    return n;
  }

  bool contains(const std::vector<int>& k) const {
    for (int i = 0; i < dim(); ++i)
      if (k[i] < lo[i] || k[i] > hi[i]) return false;
    return true;
  }

  Region intersect(const Region& o) const {
    Region r = *this;
    for (int i = 0; i < dim(); ++i) {
      r.lo[i] = std::max(lo[i], o.lo[i]);
      r.hi[i] = std::min(hi[i], o.hi[i]);
    }
    return r;
  }

  std::size_t index_of(const std::vector<int>& k) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim(); ++i) idx = idx * extent(i) + static_cast<std::size_t>(k[i] - lo[i]);
    return idx;
  }

  template <class F>
  void for_each(F&& fn) const {
    if (empty()) return;
    std::vector<int> k = lo;
    for (;;) {
      fn(const_cast<const std::vector<int>&>(k));
      int i = dim() - 1;
      while (i >= 0) {
        if (++k[i] <= hi[i]) break;
        k[i] = lo[i];
        --i;
      }
      if (i < 0) break;
    }
  }

  bool operator==(const Region&) const = default;
};

/// Finite window of the lattice hZ^n together with the boundary mode used
/// by the one-step operators.
struct LatticeBox {
  int n = 1;
  double h = 1.0;
  Region bounds;
  Boundary mode = Boundary::Shrinking;

  LatticeBox() = default;
  LatticeBox(int n_, double h_, std::vector<int> lo, std::vector<int> hi,
             Boundary mode_ = Boundary::Shrinking)
      : n(n_), h(h_), bounds{std::move(lo), std::move(hi)}, mode(mode_) {
    validate();
  }

  static LatticeBox cube(int n, double h, int lo, int hi, Boundary mode = Boundary::Shrinking) {
    return LatticeBox(n, h, std::vector<int>(n, lo), std::vector<int>(n, hi), mode);
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("LatticeBox: dimension must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("LatticeBox: mesh width must be > 0");
    if (bounds.dim() != n) throw std::invalid_argument("LatticeBox: bounds dimension mismatch");
    if (bounds.empty()) throw std::invalid_argument("LatticeBox: empty bounds");
  }

  bool operator==(const LatticeBox&) const = default;
};

/// Lattice function with values in Cl(0,n); immutable after construction.
/// In shrinking mode the valid region contracts by one layer on the affected
/// side for each one-step operator; in periodic mode indexing wraps.
class Field {
 public:
  Field(LatticeBox box, Region valid, const Multivector& fill)
      : box_(std::move(box)), valid_(std::move(valid)),
        values_(valid_.site_count(), fill) {
    check_value_sig(fill);
    if (box_.mode == Boundary::Periodic && !(valid_ == box_.bounds))
      throw std::invalid_argument("periodic fields cover the whole box");
  }

  static Field build(const LatticeBox& box,
                     const std::function<Multivector(const std::vector<int>&)>& fn) {
    return build_on(box, box.bounds, fn);
  }

  static Field build_on(const LatticeBox& box, const Region& valid,
                        const std::function<Multivector(const std::vector<int>&)>& fn) {
    Field f(box, valid, Multivector(Signature::neg_definite(box.n)));
    valid.for_each([&](const std::vector<int>& k) { f.values_[valid.index_of(k)] = fn(k); });
    return f;
  }

  const LatticeBox& box() const { return box_; }
  const Region& valid() const { return valid_; }
  double h() const { return box_.h; }
  int n() const { return box_.n; }
  Signature value_sig() const { return Signature::neg_definite(box_.n); }

  const Multivector& at(const std::vector<int>& k) const {
    if (!valid_.contains(k)) throw std::invalid_argument("site outside the valid region");
    return values_[valid_.index_of(k)];
  }

  /// Value at k + s*e_axis, wrapping in periodic mode.
  const Multivector& neighbor(const std::vector<int>& k, int axis, int s) const {
    std::vector<int> k2 = k;
    k2[axis - 1] += s;
    if (box_.mode == Boundary::Periodic) {
      const int lo = valid_.lo[axis - 1], ext = valid_.extent(axis - 1);
      int r = (k2[axis - 1] - lo) % ext;
      if (r < 0) r += ext;
      k2[axis - 1] = lo + r;
    }
    return at(k2);
  }

  template <class F>
  void for_each_site(F&& fn) const {
    valid_.for_each([&](const std::vector<int>& k) { fn(k, values_[valid_.index_of(k)]); });
  }

  bool compatible_with(const Field& o) const {
    return box_ == o.box_;
  }

 private:
  void check_value_sig(const Multivector& v) const {
    if (!(v.sig() == Signature::neg_definite(box_.n)))
      throw std::invalid_argument("Field values must live in Cl(0,n)");
  }

  LatticeBox box_;
  Region valid_;
  std::vector<Multivector> values_;
};

namespace detail {

inline void require_same_lattice(const Field& a, const Field& b) {
  if (!a.compatible_with(b)) throw std::invalid_argument("fields live on different boxes");
}

inline void require_nonempty(const Region& r, const char* what) {
  if (r.empty()) throw std::invalid_argument(std::string(what) + ": empty valid region");
}

inline void require_axis(const Field& f, int axis) {
  if (axis < 1 || axis > f.n()) throw std::invalid_argument("axis out of range");
}

}  // namespace detail

/// Elementwise combination over the intersection of valid regions.
inline Field zip(const Field& a, const Field& b,
                 const std::function<Multivector(const Multivector&, const Multivector&)>& fn) {
  detail::require_same_lattice(a, b);
  const Region r = a.valid().intersect(b.valid());
  detail::require_nonempty(r, "zip");
  return Field::build_on(a.box(), r,
                         [&](const std::vector<int>& k) { return fn(a.at(k), b.at(k)); });
}

inline Field map(const Field& a, const std::function<Multivector(const Multivector&)>& fn) {
  return Field::build_on(a.box(), a.valid(), [&](const std::vector<int>& k) { return fn(a.at(k)); });
}

inline Field map_sites(const Field& a,
                       const std::function<Multivector(const std::vector<int>&, const Multivector&)>& fn) {
  return Field::build_on(a.box(), a.valid(),
                         [&](const std::vector<int>& k) { return fn(k, a.at(k)); });
}

inline Field add(const Field& a, const Field& b) {
  return zip(a, b, [](const Multivector& x, const Multivector& y) { return x + y; });
}
inline Field sub(const Field& a, const Field& b) {
  return zip(a, b, [](const Multivector& x, const Multivector& y) { return x - y; });
}
inline Field scale(const Field& a, scalar_t s) {
  return map(a, [s](const Multivector& x) { return x * s; });
}

/// Pointwise geometric product of two fields on the same box.
inline Field pointwise_product(const Field& a, const Field& b) {
  return zip(a, b, [](const Multivector& x, const Multivector& y) { return x * y; });
}

inline double max_norm(const Field& f) {
  double best = 0.0;
  f.for_each_site([&](const std::vector<int>&, const Multivector& v) {
    best = std::max(best, max_abs(v));
  });
  return best;
}

/// g(k) = f(k + s e_axis).  Shrinking mode contracts the valid region on the
/// appropriate side; periodic mode wraps.
inline Field shift(const Field& f, int axis, int s) {
  detail::require_axis(f, axis);
  if (s != 1 && s != -1) throw std::invalid_argument("shift step must be +-1");
  if (f.box().mode == Boundary::Periodic) {
    return Field::build_on(f.box(), f.valid(),
                           [&](const std::vector<int>& k) { return f.neighbor(k, axis, s); });
  }
  // sites whose shifted source exists, clamped to the box
  Region r = f.valid();
  r.lo[axis - 1] -= s;
  r.hi[axis - 1] -= s;
  r = r.intersect(f.box().bounds);
  detail::require_nonempty(r, "shift");
  return Field::build_on(f.box(), r,
                         [&](const std::vector<int>& k) { return f.neighbor(k, axis, s); });
}

/// (f(x + h e_j) - f(x)) / h.
inline Field forward_diff(const Field& f, int axis) {
  const Field shifted = shift(f, axis, +1);
  return scale(sub(shifted, f), scalar_t{1.0 / f.h()});
}

/// (f(x) - f(x - h e_j)) / h.
inline Field backward_diff(const Field& f, int axis) {
  const Field shifted = shift(f, axis, -1);
  return scale(sub(f, shifted), scalar_t{1.0 / f.h()});
}

/// Star Laplacian: sum_j (f(x+h e_j) + f(x-h e_j) - 2 f(x)) / h^2.
inline Field star_laplacian(const Field& f) {
  Region r = f.valid();
  if (f.box().mode == Boundary::Shrinking) {
    for (int i = 0; i < f.n(); ++i) {
      ++r.lo[i];
      --r.hi[i];
    }
  }
  detail::require_nonempty(r, "star_laplacian");
  const double inv_h2 = 1.0 / (f.h() * f.h());
  return Field::build_on(f.box(), r, [&](const std::vector<int>& k) {
    Multivector acc(f.value_sig());
    const Multivector& center = f.at(k);
    for (int j = 1; j <= f.n(); ++j) {
      acc += f.neighbor(k, j, +1) + f.neighbor(k, j, -1) - center - center;
    }
    return acc * scalar_t{inv_h2};
  });
}

/// Forward Dirac operator sum_j e_j^+ d_h^{+j}.
inline Field dirac_plus(const Field& f, Semantics sem) {
  Field acc(f.box(), f.valid(), Multivector(f.value_sig()));
  bool first = true;
  for (int j = 1; j <= f.n(); ++j) {
    Field term = (sem == Semantics::S1Pointwise)
                     ? map(forward_diff(f, j),
                           [j](const Multivector& v) { return witt_lower(j, v); })
                     : map(shift(forward_diff(f, j), j, -1),
                           [j](const Multivector& v) { return witt_lower(j, main_involution(v)); });
    acc = first ? std::move(term) : add(acc, term);
    first = false;
  }
  detail::require_nonempty(acc.valid(), "dirac_plus");
  return acc;
}

/// Backward Dirac operator sum_j e_j^- d_h^{-j}.
inline Field dirac_minus(const Field& f, Semantics sem) {
  Field acc(f.box(), f.valid(), Multivector(f.value_sig()));
  bool first = true;
  for (int j = 1; j <= f.n(); ++j) {
    Field term = (sem == Semantics::S1Pointwise)
                     ? map(backward_diff(f, j),
                           [j](const Multivector& v) { return witt_raise(j, v); })
                     : map(shift(backward_diff(f, j), j, +1),
                           [j](const Multivector& v) { return witt_raise(j, main_involution(v)); });
    acc = first ? std::move(term) : add(acc, term);
    first = false;
  }
  detail::require_nonempty(acc.valid(), "dirac_minus");
  return acc;
}

/// D_h = d_h^- - d_h^+.
inline Field dirac_dh(const Field& f, Semantics sem) {
  return sub(dirac_minus(f, sem), dirac_plus(f, sem));
}

/// Central-difference Dirac operator sum_j e_j (f(x+h e_j) - f(x-h e_j)) / (2h),
/// the symmetric part of D_h.
inline Field central_dirac(const Field& f) {
  Field acc(f.box(), f.valid(), Multivector(f.value_sig()));
  bool first = true;
  for (int j = 1; j <= f.n(); ++j) {
    Field d = scale(sub(shift(f, j, +1), shift(f, j, -1)), scalar_t{0.5 / f.h()});
    Field term = map(d, [j](const Multivector& v) { return endo_left(j, v); });
    acc = first ? std::move(term) : add(acc, term);
    first = false;
  }
  return acc;
}

/// Lattice d'Alembert operator: -sum_j E_{j+n}(d_h^{-j} d_h^{+j} f) with the
/// right endomorphism acting as a -> a' e_j.
inline Field dalembert(const Field& f) {
  Field acc(f.box(), f.valid(), Multivector(f.value_sig()));
  bool first = true;
  for (int j = 1; j <= f.n(); ++j) {
    Field sd = backward_diff(forward_diff(f, j), j);
    Field term = map(sd, [j](const Multivector& v) { return -endo_right(j, v); });
    acc = first ? std::move(term) : add(acc, term);
    first = false;
  }
  return acc;
}

/// Staggered sign sigma(k) = prod_j (-1)^{k_j}.
inline int staggered_sign(const std::vector<int>& k) {
  int parity = 0;
  for (int v : k) parity ^= (v & 1);
  return parity ? -1 : 1;
}

/// chi_h action: g(k) = sigma(k) K(f(k)) with K the grade involution.
/// Involutive: applying it twice is the identity.
inline Field chi_action(const Field& f) {
  return map_sites(f, [](const std::vector<int>& k, const Multivector& v) {
    return main_involution(v) * scalar_t{static_cast<double>(staggered_sign(k))};
  });
}

/// Site-independent factor of chi_h: g(k) = K(f(k)).
inline Field k_action(const Field& f) {
  return map(f, [](const Multivector& v) { return main_involution(v); });
}

inline Field apply_mass_term(const Field& f, MassTerm mt) {
  return mt == MassTerm::Chi ? chi_action(f) : k_action(f);
}

/// Chirality projection 1/2 (f +- chi_h f).
inline Field project_chiral(const Field& f, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("projection sign must be +-1");
  const Field cf = chi_action(f);
  return scale(sign > 0 ? add(f, cf) : sub(f, cf), scalar_t{0.5});
}

/// Residual of the discretized Klein-Gordon equation: Delta_h f - m^2 f on
/// the interior, with its max coefficient magnitude.
inline std::pair<Field, double> kg_residual(const Field& f, double m) {
  Field r = sub(star_laplacian(f), scale(f, scalar_t{m * m}));
  detail::require_nonempty(r.valid(), "kg_residual");
  const double norm = max_norm(r);
  return {std::move(r), norm};
}

/// Mean-value form of the same equation:
/// sum_j f(x+h e_j) + f(x-h e_j) - ((mh)^2 + 2n) f(x).
inline std::pair<Field, double> kg_mean_value_residual(const Field& f, double m) {
  Region r = f.valid();
  if (f.box().mode == Boundary::Shrinking) {
    for (int i = 0; i < f.n(); ++i) {
      ++r.lo[i];
      --r.hi[i];
    }
  }
  detail::require_nonempty(r, "kg_mean_value_residual");
  const double mh = m * f.h();
  const double rhs = mh * mh + 2.0 * f.n();
  Field out = Field::build_on(f.box(), r, [&](const std::vector<int>& k) {
    Multivector acc(f.value_sig());
    for (int j = 1; j <= f.n(); ++j) acc += f.neighbor(k, j, +1) + f.neighbor(k, j, -1);
    return acc - f.at(k) * scalar_t{rhs};
  });
  const double norm = max_norm(out);
  return {std::move(out), norm};
}

/// Residual of D_h f = m X f with X the chosen mass-term dressing.
inline std::pair<Field, double> dirac_residual(const Field& f, double m, Semantics sem,
                                               MassTerm mt) {
  Field r = sub(dirac_dh(f, sem), scale(apply_mass_term(f, mt), scalar_t{m}));
  detail::require_nonempty(r.valid(), "dirac_residual");
  const double norm = max_norm(r);
  return {std::move(r), norm};
}

struct CoupledResiduals {
  double plus = 0.0;   ///< max norm of D_h f_+ - m f_+
  double minus = 0.0;  ///< max norm of D_h f_- + m f_-
};

/// Residuals of the diagonal coupled system D_h f_+ = m f_+, D_h f_- = -m f_-.
inline CoupledResiduals coupled_residuals(const Field& f_plus, const Field& f_minus, double m,
                                          Semantics sem) {
  detail::require_same_lattice(f_plus, f_minus);
  const Field rp = sub(dirac_dh(f_plus, sem), scale(f_plus, scalar_t{m}));
  const Field rm = add(dirac_dh(f_minus, sem), scale(f_minus, scalar_t{m}));
  return {max_norm(rp), max_norm(rm)};
}

/// Residuals of the cross-coupled system D_h f_+ = -m f_-, D_h f_- = m f_+,
/// the first-order system actually closed by an anticommuting mass term.
inline CoupledResiduals cross_coupled_residuals(const Field& f_plus, const Field& f_minus,
                                                double m, Semantics sem) {
  detail::require_same_lattice(f_plus, f_minus);
  const Field rp = add(dirac_dh(f_plus, sem), scale(f_minus, scalar_t{m}));
  const Field rm = sub(dirac_dh(f_minus, sem), scale(f_plus, scalar_t{m}));
  return {max_norm(rp), max_norm(rm)};
}

/// Random field with independent standard normal coefficients.
inline Field random_field(Rng& rng, const LatticeBox& box, bool complex_coeffs = false) {
  const Signature sig = Signature::neg_definite(box.n);
  return Field::build(box, [&](const std::vector<int>&) {
    return random_multivector(rng, sig, complex_coeffs);
  });
}

}  // namespace latcliff
