#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>

#include "latcliff/lattice.hpp"

namespace latcliff {

/// How the staggered action inside projected polynomials behaves under the
/// shifts of a difference stencil: StaticChi freezes it at the evaluation
/// center, ShiftedChi re-evaluates it at each shifted site.
enum class ChiConvention { StaticChi, ShiftedChi };

inline const char* to_string(ChiConvention c) {
  return c == ChiConvention::StaticChi ? "static" : "shifted";
}

/// Chebyshev polynomial of the first kind, T_{|k|}(lam), total in both
/// arguments.  Small degrees use the explicit polynomials (exact for exact
/// inputs); larger degrees use the cosine branch on [-1,1] and the
/// conjugate-root power branch outside, with the parity flip for lam < -1.
inline double cheb_T(long long k, double lam) {
  const unsigned long long kk = static_cast<unsigned long long>(k < 0 ? -k : k);
  switch (kk) {
    case 0: return 1.0;
    case 1: return lam;
    case 2: return 2.0 * lam * lam - 1.0;
    case 3: return (4.0 * lam * lam - 3.0) * lam;
    case 4: {
      const double l2 = lam * lam;
      return 8.0 * l2 * l2 - 8.0 * l2 + 1.0;
    }
    default: break;
  }
  const double dk = static_cast<double>(kk);
  if (std::abs(lam) <= 1.0) return std::cos(dk * std::acos(lam));
  const double t = std::abs(lam) + std::sqrt(lam * lam - 1.0);
  const double p = std::pow(t, dk);
  const double val = 0.5 * (p + 1.0 / p);
  return (lam < 0.0 && (kk & 1)) ? -val : val;
}

/// Conjugate-root power G(t, lam; +-1) = (lam +- sqrt(lam^2 - 1))^t for
/// integer t of either sign; complex branch for |lam| < 1.
inline std::complex<double> conjugate_root_power(long long t, double lam, int gam_sign) {
  if (gam_sign != 1 && gam_sign != -1)
    throw std::invalid_argument("conjugate_root_power: sign must be +-1");
  const std::complex<double> s = std::sqrt(std::complex<double>(lam * lam - 1.0, 0.0));
  std::complex<double> base = std::complex<double>(lam, 0.0) + static_cast<double>(gam_sign) * s;
  unsigned long long e = static_cast<unsigned long long>(t < 0 ? -t : t);
  std::complex<double> acc{1.0, 0.0};
  while (e != 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return t < 0 ? 1.0 / acc : acc;
}

/// Parameters of the multivariable hypercomplex Chebyshev polynomials.
struct ChebyshevParams {
  int n = 1;
  double h = 1.0;
  double m = 0.0;
  std::vector<double> y;
  std::vector<double> alpha;
  Multivector a;
  ChiConvention convention = ChiConvention::ShiftedChi;

  ChebyshevParams(int n_, double h_, double m_, std::vector<double> y_, std::vector<double> alpha_,
                  Multivector a_, ChiConvention conv = ChiConvention::ShiftedChi)
      : n(n_), h(h_), m(m_), y(std::move(y_)), alpha(std::move(alpha_)), a(std::move(a_)),
        convention(conv) {
    if (n < 1) throw std::invalid_argument("ChebyshevParams: dimension must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("ChebyshevParams: mesh width must be > 0");
    if (m < 0.0) throw std::invalid_argument("ChebyshevParams: mass must be >= 0");
    if (static_cast<int>(y.size()) != n || static_cast<int>(alpha.size()) != n)
      throw std::invalid_argument("ChebyshevParams: parameter vectors must have length n");
    if (!(a.sig() == Signature::neg_definite(n)))
      throw std::invalid_argument("ChebyshevParams: amplitude must live in Cl(0,n)");
  }

  double lambda(int j) const { return y[j - 1] + 2.0 * alpha[j - 1]; }

  /// |sum_j (2 y_j + 4 alpha_j) - ((mh)^2 + 2n)|, zero for Klein-Gordon
  /// solution parameters.
  double kg_constraint_residual() const {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += 2.0 * y[j - 1] + 4.0 * alpha[j - 1];
    const double mh = m * h;
    return std::abs(s - (mh * mh + 2.0 * n));
  }

  bool alpha_is_zero() const {
    for (double v : alpha)
      if (v != 0.0) return false;
    return true;
  }
};

/// Unprojected multivariable value a * prod_j T_{|k_j|}(y_j + 2 alpha_j).
inline Multivector cheb_T0_multi(const ChebyshevParams& p, const std::vector<int>& site) {
  if (static_cast<int>(site.size()) != p.n)
    throw std::invalid_argument("cheb_T0_multi: site dimension mismatch");
  double prod = 1.0;
  for (int j = 1; j <= p.n; ++j) prod *= cheb_T(site[j - 1], p.lambda(j));
  return p.a * scalar_t{prod};
}

/// Chirality-projected value 1/2 (1 +- chi_h(x)) T0(x, y + 2 alpha; a).
/// The two conventions coincide at a single site; they differ only through
/// stencil use (see the recurrence and residual evaluators).
inline Multivector cheb_projected(const ChebyshevParams& p, int sign, const std::vector<int>& site) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("cheb_projected: sign must be +-1");
  if (p.alpha_is_zero())
    throw std::invalid_argument("cheb_projected: projection form requires alpha != 0");
  const Multivector v = cheb_T0_multi(p, site);
  const Multivector chi_v = main_involution(v) * scalar_t{static_cast<double>(staggered_sign(site))};
  return (sign > 0 ? v + chi_v : v - chi_v) * scalar_t{0.5};
}

/// Exact evaluation of (c Id + mu P)^s on v with P = 1/2 (1 +- K): the two
/// eigenspaces of the idempotent carry the scalar powers separately.
inline Multivector projector_split_power(double c, double mu, int sign, int s,
                                         const Multivector& v) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  if (s < 0) throw std::invalid_argument("power must be >= 0");
  const Multivector kv = main_involution(v);
  const Multivector pv = (sign > 0 ? v + kv : v - kv) * scalar_t{0.5};
  const Multivector qv = v - pv;
  return pv * scalar_t{std::pow(c + mu, s)} + qv * scalar_t{std::pow(c, s)};
}

/// Field plus provenance of the builder that produced it.
struct SolutionField {
  Field field;
  std::string builder;
  ChebyshevParams params;
};

/// Klein-Gordon solution with lambda_j = 1 + w_j (mh)^2 / 2; the weights
/// must sum to one so the mean-value constraint holds by construction.
inline SolutionField build_kg_solution(int n, double h, double m, const std::vector<double>& w,
                                       const Multivector& a, const LatticeBox& box) {
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("build_kg_solution: weight vector must have length n");
  double ws = 0.0;
  for (double v : w) ws += v;
  if (std::abs(ws - 1.0) > 1e-12)
    throw std::invalid_argument("build_kg_solution: weights must sum to 1");
  if (box.n != n) throw std::invalid_argument("build_kg_solution: box dimension mismatch");
  const double mh = m * h;
  std::vector<double> y(n);
  for (int j = 0; j < n; ++j) y[j] = 1.0 + 0.5 * w[j] * mh * mh;
  ChebyshevParams params(n, h, m, y, std::vector<double>(n, 0.0), a);
  Field f = Field::build(box, [&](const std::vector<int>& k) { return cheb_T0_multi(params, k); });
  return {std::move(f), "kg", std::move(params)};
}

struct DiracBuildReport {
  double kg_residual_g = 0.0;      ///< interior residual of the seed solution
  double coupled_plus = 0.0;       ///< max |D_h f_+ - m f_+|
  double coupled_minus = 0.0;      ///< max |D_h f_- + m f_-|
  double cross_plus = 0.0;         ///< max |D_h f_+ + m f_-|
  double cross_minus = 0.0;        ///< max |D_h f_- - m f_+|
  double single_equation = 0.0;    ///< max |(D_h - m X)(f_+ + f_-)|
};

struct DiracSolutions {
  SolutionField plus;
  SolutionField minus;
  DiracBuildReport report;
};

namespace detail {

/// Frozen-center residual evaluation: all staggered signs inside the
/// construction are held at the center site of each residual stencil.
/// Returns max residuals over every center whose radius-2 cube fits.
inline DiracBuildReport frozen_chi_residuals(const ChebyshevParams& params, const LatticeBox& box,
                                             double m, Semantics sem) {
  const int n = box.n;
  Region centers = box.bounds;
  for (int i = 0; i < n; ++i) {
    centers.lo[i] += 2;
    centers.hi[i] -= 2;
  }
  if (centers.empty())
    throw std::invalid_argument("frozen residuals: box too small for a radius-2 stencil");

  DiracBuildReport rep;
  centers.for_each([&](const std::vector<int>& c) {
    const double sigma0 = static_cast<double>(staggered_sign(c));
    const auto chi0 = [&](const Multivector& v) { return main_involution(v) * scalar_t{sigma0}; };
    const auto proj = [&](const Multivector& v, int sign) {
      return (sign > 0 ? v + chi0(v) : v - chi0(v)) * scalar_t{0.5};
    };

    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = c[i] - 2;
      hi[i] = c[i] + 2;
    }
    const LatticeBox cube(n, box.h, lo, hi, Boundary::Shrinking);
    const Field g = Field::build(cube, [&](const std::vector<int>& k) {
      return cheb_T0_multi(params, k);
    });
    const Field dg = dirac_dh(g, sem);

    // construction with the mass dressing inside: f_pm = P_pm (D_h g - m chi0 g)
    const Field w = zip(dg, g, [&](const Multivector& dv, const Multivector& gv) {
      return dv - chi0(gv) * scalar_t{m};
    });
    const Field fp = map(w, [&](const Multivector& v) { return proj(v, +1); });
    const Field fm = map(w, [&](const Multivector& v) { return proj(v, -1); });
    const Field dfp = dirac_dh(fp, sem);
    const Field dfm = dirac_dh(fm, sem);
    rep.coupled_plus = std::max(rep.coupled_plus, max_abs(dfp.at(c) - fp.at(c) * scalar_t{m}));
    rep.coupled_minus = std::max(rep.coupled_minus, max_abs(dfm.at(c) + fm.at(c) * scalar_t{m}));
    rep.cross_plus = std::max(rep.cross_plus, max_abs(dfp.at(c) + fm.at(c) * scalar_t{m}));
    rep.cross_minus = std::max(rep.cross_minus, max_abs(dfm.at(c) - fp.at(c) * scalar_t{m}));
    const Multivector total = dfp.at(c) + dfm.at(c);
    const Multivector mass = chi0(fp.at(c) + fm.at(c)) * scalar_t{m};
    rep.single_equation = std::max(rep.single_equation, max_abs(total - mass));
  });
  return rep;
}

}  // namespace detail

/// Spinor candidates for the coupled first-order system, built from a
/// Klein-Gordon seed with the uniform split y_j = (mh)^2/(2n), alpha_j = 1/2:
/// f_pm = 1/2 (1 +- X)(D_h g - m X g) with X the chosen mass dressing.
/// The report carries the diagonal residuals, the cross-system residuals and
/// the single-equation residual; for MassTerm::K the conventions coincide.
inline DiracSolutions build_dirac_solutions(int n, double h, double m, const Multivector& a,
                                            const LatticeBox& box, Semantics sem, MassTerm mt,
                                            ChiConvention conv) {
  if (box.n != n) throw std::invalid_argument("build_dirac_solutions: box dimension mismatch");
  const double mh = m * h;
  const std::vector<double> y(n, mh * mh / (2.0 * n));
  const std::vector<double> alpha(n, 0.5);
  ChebyshevParams params(n, h, m, y, alpha, a, conv);

  const Field g = Field::build(box, [&](const std::vector<int>& k) {
    return cheb_T0_multi(params, k);
  });
  const Field dg = dirac_dh(g, sem);
  const Field xg = apply_mass_term(g, mt);
  const Field w = sub(dg, scale(xg, scalar_t{m}));

  Field fp = (mt == MassTerm::Chi)
                 ? project_chiral(w, +1)
                 : map(w, [](const Multivector& v) {
                     return (v + main_involution(v)) * scalar_t{0.5};
                   });
  Field fm = (mt == MassTerm::Chi)
                 ? project_chiral(w, -1)
                 : map(w, [](const Multivector& v) {
                     return (v - main_involution(v)) * scalar_t{0.5};
                   });

  DiracBuildReport rep;
  rep.kg_residual_g = kg_residual(g, m).second;
  if (mt == MassTerm::Chi && conv == ChiConvention::StaticChi) {
    rep = detail::frozen_chi_residuals(params, box, m, sem);
    rep.kg_residual_g = kg_residual(g, m).second;
  } else {
    const CoupledResiduals diag = coupled_residuals(fp, fm, m, sem);
    const CoupledResiduals cross = cross_coupled_residuals(fp, fm, m, sem);
    rep.coupled_plus = diag.plus;
    rep.coupled_minus = diag.minus;
    rep.cross_plus = cross.plus;
    rep.cross_minus = cross.minus;
    const Field total = add(fp, fm);
    rep.single_equation = dirac_residual(total, m, sem, mt).second;
  }

  return {{std::move(fp), "dirac-plus", params}, {std::move(fm), "dirac-minus", params}, rep};
}

struct ContestedSpinorReport {
  double corollary_plus = 0.0;   ///< diag residual of f_+ = 1/2(1+chi)(D_h g - m g)
  double corollary_minus = 0.0;  ///< diag residual of f_- = 1/2(1-chi)(D_h g - m g)
  double spinor_plus = 0.0;      ///< diag residual of f_+ = D_h T^(-a) - m T^(+a)
  double spinor_minus = 0.0;     ///< diag residual of f_- = D_h T^(+a) - m T^(-a)
};

/// Residuals of the two projection-based spinor constructions against the
/// diagonal coupled system D_h f_pm = pm m f_pm, with the full staggered
/// mass dressing, under either chi convention.
inline ContestedSpinorReport contested_spinor_residuals(int n, double h, double m,
                                                        const Multivector& a,
                                                        const LatticeBox& box, Semantics sem,
                                                        ChiConvention conv) {
  if (box.n != n) throw std::invalid_argument("contested_spinor_residuals: dimension mismatch");
  const double mh = m * h;
  const std::vector<double> y(n, mh * mh / (2.0 * n));
  const std::vector<double> alpha(n, 0.5);
  ChebyshevParams params(n, h, m, y, alpha, a, conv);

  ContestedSpinorReport rep;
  if (conv == ChiConvention::ShiftedChi) {
    const Field g = Field::build(box, [&](const std::vector<int>& k) {
      return cheb_T0_multi(params, k);
    });
    const Field w = sub(dirac_dh(g, sem), scale(g, scalar_t{m}));
    const CoupledResiduals cor =
        coupled_residuals(project_chiral(w, +1), project_chiral(w, -1), m, sem);
    rep.corollary_plus = cor.plus;
    rep.corollary_minus = cor.minus;

    const Field t_plus = Field::build(box, [&](const std::vector<int>& k) {
      return cheb_projected(params, +1, k);
    });
    const Field t_minus = Field::build(box, [&](const std::vector<int>& k) {
      return cheb_projected(params, -1, k);
    });
    const Field fp = sub(dirac_dh(t_minus, sem), scale(t_plus, scalar_t{m}));
    const Field fm = sub(dirac_dh(t_plus, sem), scale(t_minus, scalar_t{m}));
    const CoupledResiduals spin = coupled_residuals(fp, fm, m, sem);
    rep.spinor_plus = spin.plus;
    rep.spinor_minus = spin.minus;
    return rep;
  }

  // static convention: freeze the staggered sign at each residual center
  Region centers = box.bounds;
  for (int i = 0; i < n; ++i) {
    centers.lo[i] += 2;
    centers.hi[i] -= 2;
  }
  if (centers.empty())
    throw std::invalid_argument("contested_spinor_residuals: box too small");
  centers.for_each([&](const std::vector<int>& c) {
    const double sigma0 = static_cast<double>(staggered_sign(c));
    const auto proj = [&](const Multivector& v, int sign) {
      return (v + main_involution(v) * scalar_t{sigma0 * sign}) * scalar_t{0.5};
    };
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = c[i] - 2;
      hi[i] = c[i] + 2;
    }
    const LatticeBox cube(n, box.h, lo, hi, Boundary::Shrinking);
    const Field g = Field::build(cube, [&](const std::vector<int>& k) {
      return cheb_T0_multi(params, k);
    });
    const Field dg = dirac_dh(g, sem);

    const Field w = zip(dg, g, [&](const Multivector& dv, const Multivector& gv) {
      return dv - gv * scalar_t{m};
    });
    const Field cp = map(w, [&](const Multivector& v) { return proj(v, +1); });
    const Field cm = map(w, [&](const Multivector& v) { return proj(v, -1); });
    rep.corollary_plus = std::max(
        rep.corollary_plus, max_abs(dirac_dh(cp, sem).at(c) - cp.at(c) * scalar_t{m}));
    rep.corollary_minus = std::max(
        rep.corollary_minus, max_abs(dirac_dh(cm, sem).at(c) + cm.at(c) * scalar_t{m}));

    const Field tp = map(g, [&](const Multivector& v) { return proj(v, +1); });
    const Field tm = map(g, [&](const Multivector& v) { return proj(v, -1); });
    const Field fp = sub(dirac_dh(tm, sem), scale(tp, scalar_t{m}));
    const Field fm = sub(dirac_dh(tp, sem), scale(tm, scalar_t{m}));
    rep.spinor_plus = std::max(
        rep.spinor_plus, max_abs(dirac_dh(fp, sem).at(c) - fp.at(c) * scalar_t{m}));
    rep.spinor_minus = std::max(
        rep.spinor_minus, max_abs(dirac_dh(fm, sem).at(c) + fm.at(c) * scalar_t{m}));
  });
  return rep;
}

struct RecurrenceReport {
  double t0_displayed = 0.0;        ///< T0(x+he_j) + T0(x-he_j) - 2 lambda_j T0(x)
  double static_displayed = 0.0;    ///< projected recurrence, frozen staggered sign
  double shifted_displayed = 0.0;   ///< projected recurrence, re-evaluated sign
  double shifted_crossed = 0.0;     ///< shifted variant against the opposite chirality
};

/// Three-term recurrence verification on the interior of a box, for the
/// unprojected polynomials and the projected variants under both chi
/// conventions.
inline RecurrenceReport check_recurrence(const ChebyshevParams& p, const LatticeBox& box) {
  if (box.n != p.n) throw std::invalid_argument("check_recurrence: box dimension mismatch");
  Region interior = box.bounds;
  for (int i = 0; i < p.n; ++i) {
    ++interior.lo[i];
    --interior.hi[i];
  }
  if (interior.empty()) throw std::invalid_argument("check_recurrence: empty interior");

  const bool projected = !p.alpha_is_zero();
  RecurrenceReport rep;
  interior.for_each([&](const std::vector<int>& x) {
    for (int j = 1; j <= p.n; ++j) {
      std::vector<int> up = x, down = x;
      ++up[j - 1];
      --down[j - 1];
      const double two_lam = 2.0 * p.lambda(j);
      const Multivector t_up = cheb_T0_multi(p, up);
      const Multivector t_down = cheb_T0_multi(p, down);
      const Multivector t_c = cheb_T0_multi(p, x);
      rep.t0_displayed =
          std::max(rep.t0_displayed, max_abs(t_up + t_down - t_c * scalar_t{two_lam}));
      if (!projected) continue;
      for (int sign : {+1, -1}) {
        // frozen sign at x applied to the shifted values
        const double sigma0 = static_cast<double>(staggered_sign(x));
        const auto proj0 = [&](const Multivector& v) {
          return (v + main_involution(v) * scalar_t{sigma0 * sign}) * scalar_t{0.5};
        };
        const Multivector stat_lhs = proj0(t_up) + proj0(t_down);
        const Multivector stat_rhs = proj0(t_c) * scalar_t{two_lam};
        rep.static_displayed = std::max(rep.static_displayed, max_abs(stat_lhs - stat_rhs));
        // per-site sign
        const Multivector shift_lhs = cheb_projected(p, sign, up) + cheb_projected(p, sign, down);
        const Multivector same = cheb_projected(p, sign, x) * scalar_t{two_lam};
        const Multivector opposite = cheb_projected(p, -sign, x) * scalar_t{two_lam};
        rep.shifted_displayed = std::max(rep.shifted_displayed, max_abs(shift_lhs - same));
        rep.shifted_crossed = std::max(rep.shifted_crossed, max_abs(shift_lhs - opposite));
      }
    }
  });
  return rep;
}

}  // namespace latcliff
