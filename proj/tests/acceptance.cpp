// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "latcliff/verify.hpp"

using namespace latcliff;

namespace {

int failures = 0;

void line(int idx, bool pass, const std::string& label, const std::string& detail = "") {
  std::printf("criterion %d: %s - %s%s%s\n", idx, pass ? "PASS" : "FAIL", label.c_str(),
              detail.empty() ? "" : " ", detail.c_str());
  if (!pass) ++failures;
}

bool checks_pass(const Report& rep, const std::vector<std::string>& prefixes) {
  bool all = true;
  for (const auto& c : rep.checks) {
    const bool wanted = std::any_of(prefixes.begin(), prefixes.end(), [&](const std::string& p) {
      return c.id.rfind(p, 0) == 0;
    });
    if (wanted && c.status() == CheckStatus::Fail) {
      std::fprintf(stderr, "  failed check: %s (residual %.3e)\n", c.id.c_str(), c.max_residual);
      all = false;
    }
  }
  return all;
}

double worst(const Report& rep, const std::string& prefix) {
  double w = 0.0;
  for (const auto& c : rep.checks)
    if (c.id.rfind(prefix, 0) == 0) w = std::max(w, c.max_residual);
  return w;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

json strip_wall(json j) {
  j.erase("wall_ms");
  return j;
}

}  // namespace

int main() {
  verify::detail::Timer total;

  verify::SuiteConfig cfg;
  cfg.max_dim = 3;
  cfg.algebra_max_dim = 4;
  cfg.h = 1.0;
  cfg.trials = 100;
  cfg.algebra_trials = 1000;
  cfg.seed = 1;
  cfg.box_lo = -4;
  cfg.box_hi = 3;

  // 1. algebra suite: associativity, signature relations, automorphism laws
  const Report algebra = verify::run_algebra_suite(cfg);
  line(1, algebra.all_passed() && algebra.wall_ms < 10'000.0,
       "algebra suite (Cl(0,n), Cl(n,n), n <= 4, 1000 trials, rel err < 1e-12)",
       "worst=" + fmt(worst(algebra, "algebra.")) + " wall=" + fmt(algebra.wall_ms / 1000.0) +
           "s");

  // 2. Witt suite: graded relations, idempotency, unitarity, K = involution
  const Report witt = verify::run_witt_suite(cfg);
  line(2, witt.all_passed(), "Witt suite (relations, idempotents, [e+,e-]^2 = 1, K = ', < 1e-14)",
       "worst=" + fmt(worst(witt, "witt.")));

  // 3 + 4. lattice identity suite and mass-term factorization
  const Report lattice = verify::run_lattice_suite(cfg);
  line(3,
       checks_pass(lattice, {"lattice.nilpotency", "lattice.laplacian_factorization.s1",
                             "lattice.dirac_square.s1", "lattice.shift_intertwining",
                             "lattice.product_rule", "lattice.central_dalembert_split"}) &&
           lattice.wall_ms < 30'000.0,
       "lattice identities (S1 and S2 nilpotency, S1 factorizations, intertwining, product "
       "rules)",
       "wall=" + fmt(lattice.wall_ms / 1000.0) + "s");
  line(4,
       checks_pass(lattice, {"lattice.mass_factorization.K.s1", "lattice.kernel_transport.K.s1",
                             "lattice.K_anticommutation.s1"}),
       "involution mass term: (D_h - mK)^2 = -Delta_h + m^2 and kernel transport",
       "fact=" + fmt(worst(lattice, "lattice.mass_factorization")) +
           " transport=" + fmt(worst(lattice, "lattice.kernel_transport")));

  // 5. symbolic suite with mutation fixtures
  const Report symbolic = verify::run_symbolic_suite(cfg);
  line(5, symbolic.all_passed() && symbolic.wall_ms < 10'000.0,
       "symbolic suite (Leibniz both signs, nilpotency, Laplacian factorization, mutations "
       "detected, n <= 3)",
       "wall=" + fmt(symbolic.wall_ms / 1000.0) + "s");

  // 6. Chebyshev suite
  const Report cheb = verify::run_chebyshev_suite(cfg);
  line(6, cheb.all_passed(),
       "Chebyshev suite (recurrence oracle k <= 50, 2F1 cross-check, KG builders, 1-2-7-26 "
       "exact)",
       "worst=" + fmt(worst(cheb, "cheb.")));

  // 7. momentum suite
  const Report momentum = verify::run_momentum_suite(cfg);
  line(7, momentum.all_passed(),
       "momentum suite (symbol^2 = dispersion, gamma laws, zero counts, plane waves)",
       "worst=" + fmt(worst(momentum, "momentum.")));

  // 8. contested-claims report: produced, deterministic, anchored, report-only
  const Report contested_a = verify::run_contested_report(cfg);
  const Report contested_b = verify::run_contested_report(cfg);
  bool c8 = strip_wall(contested_a.to_json()).dump() == strip_wall(contested_b.to_json()).dump();
  for (const auto& c : contested_a.checks) {
    c8 = c8 && c.status() == CheckStatus::ReportOnly && !c.anchor.empty();
  }
  for (const std::string id :
       {"contested.chi_anticommutator.s1", "contested.chi_anticommutator.s2",
        "contested.corollary_system.chi.static.s1.n1", "contested.corollary_system.chi.shifted.s2.n1",
        "contested.spinor_formulas.chi.static.s1.n1", "contested.spinor_formulas.chi.shifted.s1.n2",
        "contested.coupled_diagonal.k.s1", "contested.projected_recurrence.n1",
        "contested.doubler_count.n3", "contested.dh_symbol_skew_factor"}) {
    c8 = c8 && std::any_of(contested_a.checks.begin(), contested_a.checks.end(),
                           [&](const Check& c) { return c.id == id; });
  }
  line(8, c8, "contested-claims report (deterministic, anchored, never asserted)",
       std::to_string(contested_a.checks.size()) + " entries");

  // 9. wall time of the whole suite
  const double total_s = total.ms() / 1000.0;
  line(9, total_s < 120.0, "whole-suite wall time < 2 minutes", fmt(total_s) + "s");

  std::printf("%s (%d criterion failures)\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              failures);
  return failures;
}
