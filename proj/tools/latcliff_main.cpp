// Command-line front end: verification suites, solution builders, symbolic
// checks and dispersion scans, with deterministic JSON reports and CSV data.
//
// Exit codes: 0 all pass-class checks pass; 1 a pass-class check failed;
// 2 usage or invalid arguments; 3 I/O failure.

#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "latcliff/io.hpp"
#include "latcliff/verify.hpp"

using namespace latcliff;

namespace {

std::pair<std::vector<int>, std::vector<int>> parse_box(const std::string& spec, int n) {
  std::vector<int> lo, hi;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("box must be lo:hi[,lo:hi...], got '" + spec + "'");
    lo.push_back(std::stoi(part.substr(0, colon)));
    hi.push_back(std::stoi(part.substr(colon + 1)));
  }
  if (lo.size() == 1) {
    lo.assign(n, lo[0]);
    hi.assign(n, hi[0]);
  }
  if (static_cast<int>(lo.size()) != n)
    throw std::invalid_argument("box needs one lo:hi pair or one per axis");
  return {lo, hi};
}

std::vector<double> parse_weights(const std::string& spec, int n) {
  if (spec.empty()) return std::vector<double>(n, 1.0 / n);
  std::vector<double> w;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) w.push_back(std::stod(part));
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("weights need one entry per axis");
  return w;
}

/// blade:val[,blade:val...] with the blade as a digit string of generator
/// indices ("0" is the scalar blade, "12" is e_1 e_2).
Multivector parse_amplitude(const std::string& spec, int n) {
  const Signature sig = Signature::neg_definite(n);
  if (spec.empty()) return Multivector::scalar(sig, 1.0);
  Multivector a(sig);
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("amplitude must be blade:val[,blade:val...]");
    const std::string blade = part.substr(0, colon);
    const double val = std::stod(part.substr(colon + 1));
    mask_t m = 0;
    if (blade != "0") {
      for (char c : blade) {
        if (c < '1' || c > '9') throw std::invalid_argument("blade digits must be 1..9");
        const int j = c - '0';
        if (j > n) throw std::invalid_argument("blade index exceeds the dimension");
        const mask_t bit = mask_t{1} << (j - 1);
        if (m & bit) throw std::invalid_argument("repeated blade index");
        m |= bit;
      }
    }
    a.coeff(m) += val;
  }
  return a;
}

Semantics parse_semantics(const std::string& s) {
  if (s == "s1") return Semantics::S1Pointwise;
  if (s == "s2") return Semantics::S2Module;
  throw std::invalid_argument("semantics must be s1 or s2");
}

MassTerm parse_mass_term(const std::string& s) {
  if (s == "chi") return MassTerm::Chi;
  if (s == "k") return MassTerm::K;
  throw std::invalid_argument("mass-term must be chi or k");
}

ChiConvention parse_convention(const std::string& s) {
  if (s == "static") return ChiConvention::StaticChi;
  if (s == "shifted") return ChiConvention::ShiftedChi;
  throw std::invalid_argument("convention must be static or shifted");
}

void print_suite_summary(const Report& rep) {
  int pass = 0, fail = 0, report_only = 0;
  for (const auto& c : rep.checks) {
    switch (c.status()) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++fail; break;
      default: ++report_only; break;
    }
  }
  std::printf("suite %-10s %3zu checks: %3d pass, %d fail, %d report-only  (%.1f ms)\n",
              rep.suite.c_str(), rep.checks.size(), pass, fail, report_only, rep.wall_ms);
  for (const auto& c : rep.checks)
    if (c.status() == CheckStatus::Fail)
      std::printf("  FAIL %s  residual=%.3e tolerance=%.3e\n", c.id.c_str(), c.max_residual,
                  c.tolerance);
}

std::string out_with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int cmd_verify(int dim, double h, int trials, int algebra_trials, std::uint64_t seed,
               const std::string& report_path, const std::string& mutation) {
  verify::SuiteConfig cfg;
  cfg.max_dim = dim;
  cfg.algebra_max_dim = std::min(dim, 4);
  cfg.h = h;
  cfg.trials = trials;
  cfg.algebra_trials = algebra_trials;
  cfg.seed = seed;
  cfg.mutation = mutation;

  const auto reports = verify::run_all(cfg);
  for (const auto& r : reports) print_suite_summary(r);
  const bool ok = verify::all_passed(reports);
  std::printf("verify: %s\n", ok ? "PASS" : "FAIL");

  if (!report_path.empty()) {
    json j;
    j["schema"] = 1;
    j["config"] = cfg.to_json();
    j["suites"] = reports_to_json(reports);
    io::write_json(j, report_path);
  }
  return ok ? 0 : 1;
}

int cmd_solve_kg(int dim, double h, double mass, const std::string& box_spec,
                 const std::string& weights_spec, const std::string& amplitude_spec,
                 const std::string& out, const std::string& report_path) {
  auto [lo, hi] = parse_box(box_spec, dim);
  const LatticeBox box(dim, h, std::move(lo), std::move(hi));
  const auto w = parse_weights(weights_spec, dim);
  const auto amp = parse_amplitude(amplitude_spec, dim);

  const auto sol = build_kg_solution(dim, h, mass, w, amp, box);
  const auto [residual_field, residual] = kg_residual(sol.field, mass);
  (void)residual_field;

  if (!out.empty()) io::write_field_csv(sol.field, out);

  Report rep;
  rep.suite = "solve-kg";
  rep.config = {{"dim", dim},     {"h", h},
                {"m", mass},     {"weights", w},
                {"amplitude", io::multivector_to_json(amp)},
                {"box", {box.bounds.lo, box.bounds.hi}}};
  rep.checks.push_back({"solve.kg_residual", "Sec 1.2, Delta_h f = m^2 f", residual, 1e-9, false,
                        false,
                        json{{"box", {box.bounds.lo, box.bounds.hi}}, {"h", h}, {"m", mass}}});
  if (!report_path.empty()) io::write_json(rep.to_json(), report_path);

  std::printf("solve-kg: interior residual %.3e (tolerance 1e-9)%s\n", residual,
              out.empty() ? "" : (", field written to " + out).c_str());
  return residual < 1e-9 ? 0 : 1;
}

int cmd_solve_dirac(int dim, double h, double mass, const std::string& box_spec,
                    const std::string& amplitude_spec, const std::string& semantics,
                    const std::string& mass_term, const std::string& convention,
                    const std::string& out, const std::string& report_path) {
  auto [lo, hi] = parse_box(box_spec, dim);
  const LatticeBox box(dim, h, std::move(lo), std::move(hi));
  const auto amp = parse_amplitude(amplitude_spec, dim);
  const Semantics sem = parse_semantics(semantics);
  const MassTerm mt = parse_mass_term(mass_term);
  const ChiConvention conv = parse_convention(convention);

  const auto sol = build_dirac_solutions(dim, h, mass, amp, box, sem, mt, conv);

  if (!out.empty()) {
    io::write_field_csv(sol.plus.field, out_with_suffix(out, "_plus"));
    io::write_field_csv(sol.minus.field, out_with_suffix(out, "_minus"));
  }

  const bool asserted = (mt == MassTerm::K && sem == Semantics::S1Pointwise);
  Report rep;
  rep.suite = "solve-dirac";
  rep.config = {{"dim", dim},
                {"h", h},
                {"m", mass},
                {"semantics", semantics},
                {"mass_term", mass_term},
                {"convention", convention},
                {"amplitude", io::multivector_to_json(amp)},
                {"box", {box.bounds.lo, box.bounds.hi}}};
  const json common{{"semantics", semantics}, {"mass_term", mass_term},
                    {"convention", convention}, {"h", h}, {"m", mass}};
  rep.checks.push_back({"solve.dirac.kg_seed", "Sec 3.2, the seed solves the lattice KG equation",
                        sol.report.kg_residual_g, 1e-9, false, false, common});
  rep.checks.push_back({"solve.dirac.single_equation",
                        "Sec 3.1, (D_h - m X)(f_+ + f_-) = 0", sol.report.single_equation, 1e-9,
                        false, !asserted, common});
  rep.checks.push_back({"solve.dirac.cross_system",
                        "Sec 3.1, D_h f_+ = -m f_-, D_h f_- = m f_+",
                        std::max(sol.report.cross_plus, sol.report.cross_minus), 1e-9, false,
                        !asserted, common});
  rep.checks.push_back({"solve.dirac.coupled_diagonal",
                        "Sec 3.1 Cor., D_h f_pm = pm m f_pm (recorded, not asserted)",
                        std::max(sol.report.coupled_plus, sol.report.coupled_minus), 0.0, false,
                        true, common});
  if (!report_path.empty()) io::write_json(rep.to_json(), report_path);

  std::printf("solve-dirac: kg_seed=%.3e single=%.3e cross=(%.3e, %.3e) diagonal=(%.3e, %.3e)\n",
              sol.report.kg_residual_g, sol.report.single_equation, sol.report.cross_plus,
              sol.report.cross_minus, sol.report.coupled_plus, sol.report.coupled_minus);
  return rep.all_passed() ? 0 : 1;
}

int cmd_dispersion(int dim, double h, int grid_n, const std::string& op_name, double mass,
                   const std::string& out, const std::string& zeros_path) {
  SymbolOp op;
  if (op_name == "central")
    op = SymbolOp::Central;
  else if (op_name == "dh")
    op = SymbolOp::Dh;
  else if (op_name == "kg")
    op = SymbolOp::Kg;
  else
    throw std::invalid_argument("operator must be central, dh or kg");

  const BrillouinGrid grid(dim, h, grid_n);

  if (!out.empty()) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 1; i <= dim; ++i) os << "xi" << i << ",";
    os << "magnitude\n";
    std::vector<int> idx(dim, 0);
    std::vector<double> xi(dim, 0.0);
    for (;;) {
      for (int i = 0; i < dim; ++i) xi[i] = grid.node(idx[i]);
      for (double v : xi) os << v << ",";
      os << symbol_magnitude(op, xi, h, dim, mass) << "\n";
      int i = dim - 1;
      while (i >= 0) {
        if (++idx[i] < grid_n) break;
        idx[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
    io::atomic_write(out, os.str());
  }

  if (!zeros_path.empty()) {
    const auto scan = zero_scan(grid, op, mass);
    json j;
    j["schema"] = 1;
    j["operator"] = op_name;
    j["dim"] = dim;
    j["h"] = h;
    j["grid"] = grid_n;
    j["mass"] = mass;
    j["count_identified"] = scan.count_identified;
    j["count_raw"] = scan.count_raw;
    j["zeros"] = scan.zeros;
    j["note"] =
        "the D_h symbol's skew term carries the factor (2/h) sin^2(h xi_j/2), forced by "
        "D_h = (D_h^- + D_h^+)/2 + (h/2) box_h; a bare sin^2 display differs by 2/h";
    io::write_json(j, zeros_path);
    std::printf("dispersion: %s zeros identified=%d raw=%d\n", op_name.c_str(),
                scan.count_identified, scan.count_raw);
  }
  return 0;
}

int cmd_opcalc(const std::string& check, int dim, const std::string& sign_spec,
               const std::string& report_path) {
  std::vector<int> kinds;
  if (sign_spec == "plus")
    kinds = {+1};
  else if (sign_spec == "minus")
    kinds = {-1};
  else if (sign_spec == "both")
    kinds = {+1, -1};
  else
    throw std::invalid_argument("sign must be plus, minus or both");

  Report rep;
  rep.suite = "opcalc";
  rep.config = {{"check", check}, {"dim", dim}, {"sign", sign_spec}};
  bool ok = true;

  const auto record = [&](const std::string& id, const std::string& anchor,
                          const opcalc::CheckResult& res, bool expect_equal) {
    const bool good = res.equal == expect_equal;
    ok = ok && good;
    rep.checks.push_back({id, anchor, good ? 0.0 : 1.0, 0.0, true, false,
                          json{{"verdict", res.equal ? "equal" : "not-equal"}}});
    std::printf("%s: %s\n", id.c_str(), res.equal ? "equal" : "not-equal");
    if (!good) {
      std::printf("  lhs: %s\n  rhs: %s\n", res.lhs_sexpr.c_str(), res.rhs_sexpr.c_str());
    }
  };

  if (check == "leibniz" || check == "all") {
    for (int kind : kinds)
      record(std::string("opcalc.leibniz.") + (kind > 0 ? "plus" : "minus"),
             "Sec 2.3 Lemma, d_h^pm(fg) = (d_h^pm f) g + f'(d_h^pm g)",
             opcalc::check_leibniz(dim, kind), true);
  }
  if (check == "nilpotent" || check == "all") {
    for (int kind : kinds)
      record(std::string("opcalc.nilpotent.") + (kind > 0 ? "plus" : "minus"),
             "Sec 2.3, (d_h^pm)^2 = 0", opcalc::check_nilpotent(dim, kind), true);
  }
  if (check == "laplacian" || check == "all") {
    record("opcalc.laplacian_factorization",
           "Sec 2.3 Prop., d^+d^- + d^-d^+ = star Laplacian stencil",
           opcalc::check_laplacian_factorization(dim), true);
  }
  if (check == "mutations" || check == "all") {
    record("opcalc.mutation.leibniz_rhs", "mutation fixture: must be detected as not-equal",
           opcalc::check_leibniz(dim, +1, true), false);
    record("opcalc.mutation.half_factorization",
           "mutation fixture: must be detected as not-equal",
           opcalc::check_laplacian_factorization(dim, true), false);
  }
  if (rep.checks.empty())
    throw std::invalid_argument("check must be leibniz, nilpotent, laplacian, mutations or all");

  if (!report_path.empty()) io::write_json(rep.to_json(), report_path);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latcliff: discrete Clifford calculus on the lattice - verification lab and "
               "solver kit"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h / --h for the mesh width

  std::function<int()> run;

  // verify
  {
    auto* sub = app.add_subcommand("verify", "run the full identity-verification suites");
    auto dim = std::make_shared<int>(3);
    auto h = std::make_shared<double>(1.0);
    auto trials = std::make_shared<int>(100);
    auto algebra_trials = std::make_shared<int>(1000);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto report = std::make_shared<std::string>();
    auto mutation = std::make_shared<std::string>();
    sub->set_help_flag("--help", "print help");
    sub->add_option("--dim", *dim, "maximum dimension")->check(CLI::Range(1, 4));
    sub->add_option("--h", *h, "mesh width")->check(CLI::PositiveNumber);
    sub->add_option("--trials", *trials, "random trials per identity")->check(CLI::PositiveNumber);
    sub->add_option("--algebra-trials", *algebra_trials, "random trials for the algebra laws")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", *seed, "random seed (recorded in the report)");
    sub->add_option("--report", *report, "write the JSON report here");
    sub->add_option("--inject-mutation", *mutation,
                    "test fixture: inject a defect (leibniz-rhs, dagger-sign)")
        ->check(CLI::IsMember({"leibniz-rhs", "dagger-sign"}));
    sub->callback([=, &run]() {
      run = [=]() { return cmd_verify(*dim, *h, *trials, *algebra_trials, *seed, *report, *mutation); };
    });
  }

  // solve-kg
  {
    auto* sub = app.add_subcommand("solve-kg", "build an exact Klein-Gordon lattice solution");
    auto dim = std::make_shared<int>(1);
    auto h = std::make_shared<double>(1.0);
    auto mass = std::make_shared<double>(0.0);
    auto box = std::make_shared<std::string>("-4:4");
    auto weights = std::make_shared<std::string>();
    auto amplitude = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("field.csv");
    auto report = std::make_shared<std::string>("report.json");
    sub->set_help_flag("--help", "print help");
    sub->add_option("--dim", *dim, "dimension")->check(CLI::Range(1, 6));
    sub->add_option("--h", *h, "mesh width")->check(CLI::PositiveNumber);
    sub->add_option("--mass", *mass, "mass m >= 0")->check(CLI::NonNegativeNumber);
    sub->add_option("--box", *box, "lo:hi (uniform) or per-axis lo:hi,...");
    sub->add_option("--weights", *weights, "per-axis weights summing to 1 (default uniform)");
    sub->add_option("--amplitude", *amplitude,
                    "blade:val[,blade:val...] with digit-string blades ('0' scalar, '12' = e1e2)");
    sub->add_option("--out", *out, "field CSV path");
    sub->add_option("--report", *report, "residual report JSON path");
    sub->callback([=, &run]() {
      run = [=]() {
        return cmd_solve_kg(*dim, *h, *mass, *box, *weights, *amplitude, *out, *report);
      };
    });
  }

  // solve-dirac
  {
    auto* sub = app.add_subcommand("solve-dirac",
                                   "build spinor candidates for the coupled first-order system");
    auto dim = std::make_shared<int>(1);
    auto h = std::make_shared<double>(1.0);
    auto mass = std::make_shared<double>(0.0);
    auto box = std::make_shared<std::string>("-4:4");
    auto amplitude = std::make_shared<std::string>();
    auto semantics = std::make_shared<std::string>("s1");
    auto mass_term = std::make_shared<std::string>("k");
    auto convention = std::make_shared<std::string>("shifted");
    auto out = std::make_shared<std::string>("field.csv");
    auto report = std::make_shared<std::string>("report.json");
    sub->set_help_flag("--help", "print help");
    sub->add_option("--dim", *dim, "dimension")->check(CLI::Range(1, 6));
    sub->add_option("--h", *h, "mesh width")->check(CLI::PositiveNumber);
    sub->add_option("--mass", *mass, "mass m >= 0")->check(CLI::NonNegativeNumber);
    sub->add_option("--box", *box, "lo:hi (uniform) or per-axis lo:hi,...");
    sub->add_option("--amplitude", *amplitude, "blade:val[,...]");
    sub->add_option("--semantics", *semantics, "s1 | s2")->check(CLI::IsMember({"s1", "s2"}));
    sub->add_option("--mass-term", *mass_term, "chi | k")->check(CLI::IsMember({"chi", "k"}));
    sub->add_option("--convention", *convention, "static | shifted")
        ->check(CLI::IsMember({"static", "shifted"}));
    sub->add_option("--out", *out, "field CSV stem; writes <stem>_plus and <stem>_minus");
    sub->add_option("--report", *report, "residual report JSON path");
    sub->callback([=, &run]() {
      run = [=]() {
        return cmd_solve_dirac(*dim, *h, *mass, *box, *amplitude, *semantics, *mass_term,
                               *convention, *out, *report);
      };
    });
  }

  // dispersion
  {
    auto* sub = app.add_subcommand("dispersion", "momentum-space symbol scans over the torus");
    auto dim = std::make_shared<int>(1);
    auto h = std::make_shared<double>(1.0);
    auto grid = std::make_shared<int>(64);
    auto op = std::make_shared<std::string>("dh");
    auto mass = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>();
    auto zeros = std::make_shared<std::string>();
    auto zeros_flag = std::make_shared<bool>(false);
    sub->set_help_flag("--help", "print help");
    sub->add_option("--dim", *dim, "dimension")->check(CLI::Range(1, 4));
    sub->add_option("--h", *h, "mesh width")->check(CLI::PositiveNumber);
    sub->add_option("--grid", *grid, "points per axis (even, >= 16)");
    sub->add_option("--operator", *op, "central | dh | kg")
        ->check(CLI::IsMember({"central", "dh", "kg"}));
    sub->add_option("--mass", *mass, "mass for the kg operator")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", *out, "curve CSV path (xi_1..xi_n, magnitude)");
    sub->add_option("--zeros-out", *zeros, "zero report JSON path");
    sub->add_flag("--zeros", *zeros_flag, "emit the zero report (default path zeros.json)");
    sub->callback([=, &run]() {
      run = [=]() {
        std::string zpath = *zeros;
        if (*zeros_flag && zpath.empty()) zpath = "zeros.json";
        return cmd_dispersion(*dim, *h, *grid, *op, *mass, *out, zpath);
      };
    });
  }

  // opcalc
  {
    auto* sub = app.add_subcommand("opcalc", "symbolic normal-form identity checks");
    auto check = std::make_shared<std::string>("all");
    auto dim = std::make_shared<int>(1);
    auto sign = std::make_shared<std::string>("both");
    auto report = std::make_shared<std::string>();
    sub->set_help_flag("--help", "print help");
    sub->add_option("--check", *check, "leibniz | nilpotent | laplacian | mutations | all")
        ->check(CLI::IsMember({"leibniz", "nilpotent", "laplacian", "mutations", "all"}));
    sub->add_option("--dim", *dim, "dimension")->check(CLI::Range(1, 6));
    sub->add_option("--sign", *sign, "plus | minus | both")
        ->check(CLI::IsMember({"plus", "minus", "both"}));
    sub->add_option("--report", *report, "JSON report path");
    sub->callback([=, &run]() {
      run = [=]() { return cmd_opcalc(*check, *dim, *sign, *report); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const io::io_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
