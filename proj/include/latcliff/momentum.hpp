#pragma once

#include <cmath>
#include <numbers>

#include "latcliff/lattice.hpp"

namespace latcliff {

/// Uniform sampling of the momentum torus [-pi/h, pi/h]^n with opposite
/// faces identified.  Node coordinates are (2k - N) pi / (N h), so the
/// origin and the face centers land on exact grid values when N is even.
struct BrillouinGrid {
  int n = 1;
  double h = 1.0;
  int N = 16;

  BrillouinGrid(int n_, double h_, int N_) : n(n_), h(h_), N(N_) {
    if (n < 1) throw std::invalid_argument("BrillouinGrid: dimension must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("BrillouinGrid: mesh width must be > 0");
    if (N < 4 || (N % 2) != 0) throw std::invalid_argument("BrillouinGrid: N must be even, >= 4");
  }

  double node(int k) const {
    return static_cast<double>(2 * k - N) * std::numbers::pi / (static_cast<double>(N) * h);
  }
};

/// Momentum symbol value in Cl(n,n): the multivector and its magnitude,
/// the square root of the scalar part of the squared symbol.
struct SymbolValue {
  Multivector value;
  double magnitude = 0.0;
};

namespace detail {
inline double magnitude_from_square(const Multivector& s) {
  const Multivector sq = s * s;
  double m2 = sq[0].real();
  if (m2 < 0.0) m2 = 0.0;
  return std::sqrt(m2);
}
}  // namespace detail

/// Symbol of the step-h central difference Dirac operator:
/// sum_j i e_j sin(h xi_j) / h.
inline SymbolValue central_symbol(const std::vector<double>& xi, double h, int n) {
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("central_symbol: dimension");
  const Signature sig = Signature::split(n);
  Multivector s(sig);
  for (int j = 1; j <= n; ++j)
    s += Multivector::generator(sig, j) * scalar_t{0.0, std::sin(h * xi[j - 1]) / h};
  return {s, detail::magnitude_from_square(s)};
}

/// Symbol of D_h: sum_j i e_j sin(h xi_j)/h + e_{j+n} (2/h) sin^2(h xi_j/2).
/// The 2/h factor on the skew term follows from
/// D_h = (D_h^- + D_h^+)/2 + (h/2) dalembert.
inline SymbolValue dh_symbol(const std::vector<double>& xi, double h, int n) {
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("dh_symbol: dimension");
  const Signature sig = Signature::split(n);
  Multivector s(sig);
  for (int j = 1; j <= n; ++j) {
    const double half = std::sin(0.5 * h * xi[j - 1]);
    s += Multivector::generator(sig, j) * scalar_t{0.0, std::sin(h * xi[j - 1]) / h};
    s += Multivector::generator(sig, j + n) * scalar_t{2.0 * half * half / h, 0.0};
  }
  return {s, detail::magnitude_from_square(s)};
}

/// Lattice energy-momentum relation: sum_j (4/h^2) sin^2(h xi_j / 2) - m^2.
inline double kg_dispersion(const std::vector<double>& xi, double h, int n, double m) {
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("kg_dispersion: dimension");
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s = std::sin(0.5 * h * xi[j]);
    acc += 4.0 * s * s / (h * h);
  }
  return acc - m * m;
}

/// Pseudoscalar gamma = prod_j e_{j+n} e_j of Cl(n,n); squares to one and
/// anticommutes with every generator.
inline Multivector gamma_element(int n) {
  const Signature sig = Signature::split(n);
  Multivector g = Multivector::scalar(sig, 1.0);
  for (int j = 1; j <= n; ++j)
    g = g * (Multivector::generator(sig, j + n) * Multivector::generator(sig, j));
  return g;
}

enum class SymbolOp { Central, Dh, Kg };

inline const char* to_string(SymbolOp op) {
  switch (op) {
    case SymbolOp::Central: return "central";
    case SymbolOp::Dh: return "dh";
    default: return "kg";
  }
}

inline double symbol_magnitude(SymbolOp op, const std::vector<double>& xi, double h, int n,
                               double m) {
  switch (op) {
    case SymbolOp::Central: return central_symbol(xi, h, n).magnitude;
    case SymbolOp::Dh: return dh_symbol(xi, h, n).magnitude;
    default: return std::abs(kg_dispersion(xi, h, n, m));
  }
}

struct ZeroScanResult {
  int count_identified = 0;  ///< zeros on the torus (faces identified)
  int count_raw = 0;         ///< zeros on the closed cube (both faces counted)
  std::vector<std::vector<double>> zeros;  ///< identified zero locations
};

/// Grid scan for symbol zeros with threshold 1e-9; exact zeros land on grid
/// nodes whenever N is a multiple of 4.
inline ZeroScanResult zero_scan(const BrillouinGrid& grid, SymbolOp op, double mass = 0.0) {
  if (grid.N < 16) throw std::invalid_argument("zero_scan: grid resolution must be >= 16");
  constexpr double eps_zero = 1e-9;
  ZeroScanResult out;
  std::vector<double> xi(grid.n, 0.0);
  std::vector<int> idx(grid.n, 0);
  const auto scan = [&](int upper, auto&& record) {
    idx.assign(grid.n, 0);
    for (;;) {
      for (int i = 0; i < grid.n; ++i) xi[i] = grid.node(idx[i]);
      if (symbol_magnitude(op, xi, grid.h, grid.n, mass) < eps_zero) record(xi);
      int i = grid.n - 1;
      while (i >= 0) {
        if (++idx[i] <= upper) break;
        idx[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  };
  scan(grid.N - 1, [&](const std::vector<double>& z) {
    ++out.count_identified;
    out.zeros.push_back(z);
  });
  scan(grid.N, [&](const std::vector<double>&) { ++out.count_raw; });
  return out;
}

namespace detail {

inline scalar_t plane_wave_phase(const std::vector<double>& xi, const std::vector<int>& k,
                                 double h) {
  double phase = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i)
    phase += xi[i] * static_cast<double>(k[i]) * h;
  return std::exp(scalar_t{0.0, phase});
}

/// The Cl(n,n) symbol acts on a Cl(0,n) amplitude through the endomorphism
/// identification E_j : a -> e_j a, E_{j+n} : a -> a' e_j (grade-1 symbols).
inline Multivector symbol_action(const SymbolValue& s, int n, const Multivector& w) {
  Multivector out(w.sig());
  out += w * s.value[0];
  for (int j = 1; j <= n; ++j) {
    const scalar_t cj = s.value[mask_t{1} << (j - 1)];
    const scalar_t dj = s.value[mask_t{1} << (j + n - 1)];
    if (cj != scalar_t{}) out += endo_left(j, w) * cj;
    if (dj != scalar_t{}) out += endo_right(j, w) * dj;
  }
  return out;
}

}  // namespace detail

/// Applies the lattice operator to the plane wave e^{i<xi,x>} w on a
/// periodic box and compares with the symbol acting on the amplitude.
/// xi must be commensurate with the box.
inline double plane_wave_check(const std::vector<double>& xi, SymbolOp op, double mass,
                               const LatticeBox& box, const Multivector& w) {
  if (box.mode != Boundary::Periodic)
    throw std::invalid_argument("plane_wave_check: periodic box required");
  if (static_cast<int>(xi.size()) != box.n)
    throw std::invalid_argument("plane_wave_check: dimension mismatch");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < box.n; ++j) {
    const double cycles = xi[j] * box.h * static_cast<double>(box.bounds.extent(j)) / two_pi;
    if (std::abs(cycles - std::round(cycles)) > 1e-9)
      throw std::invalid_argument("plane_wave_check: incommensurate momentum");
  }

  const Field f = Field::build(box, [&](const std::vector<int>& k) {
    return w * detail::plane_wave_phase(xi, k, box.h);
  });

  Field applied = [&] {
    switch (op) {
      case SymbolOp::Central: return central_dirac(f);
      case SymbolOp::Dh: return dirac_dh(f, Semantics::S1Pointwise);
      default:
        return sub(scale(star_laplacian(f), scalar_t{-1.0}), scale(f, scalar_t{mass * mass}));
    }
  }();

  Multivector acted(w.sig());
  switch (op) {
    case SymbolOp::Central:
      acted = detail::symbol_action(central_symbol(xi, box.h, box.n), box.n, w);
      break;
    case SymbolOp::Dh:
      acted = detail::symbol_action(dh_symbol(xi, box.h, box.n), box.n, w);
      break;
    default:
      acted = w * scalar_t{kg_dispersion(xi, box.h, box.n, mass)};
      break;
  }

  double dev = 0.0;
  applied.for_each_site([&](const std::vector<int>& k, const Multivector& v) {
    dev = std::max(dev, max_abs_diff(v, acted * detail::plane_wave_phase(xi, k, box.h)));
  });
  return dev;
}

/// The staggered sign multiplies plane waves into the wave at
/// xi + (pi/h)(1,...,1): the momentum-space face of the chi action.
inline double chi_momentum_shift_check(const LatticeBox& box, const std::vector<double>& xi,
                                       const Multivector& w) {
  if (box.mode != Boundary::Periodic)
    throw std::invalid_argument("chi_momentum_shift_check: periodic box required");
  for (int j = 0; j < box.n; ++j)
    if (box.bounds.extent(j) % 2 != 0)
      throw std::invalid_argument("chi_momentum_shift_check: box extents must be even");
  std::vector<double> shifted = xi;
  for (double& v : shifted) v += std::numbers::pi / box.h;
  double dev = 0.0;
  box.bounds.for_each([&](const std::vector<int>& k) {
    const Multivector lhs =
        w * detail::plane_wave_phase(xi, k, box.h) * scalar_t{static_cast<double>(staggered_sign(k))};
    const Multivector rhs = w * detail::plane_wave_phase(shifted, k, box.h);
    dev = std::max(dev, max_abs_diff(lhs, rhs));
  });
  return dev;
}

}  // namespace latcliff
