// kreinspec command-line frontend.
//
//   analyze   <matrix-file> [--metric f] [--rtol x] [--out f] [--json]
//   fourlevel --a0 v --A c --B c [--rtol x] [--out f] [--json]
//   sweep     --a0 v --A c --B c --axis name --range lo:hi --steps n [--out f]
//   selftest  [--rtol x] [--json]
//
// Exit codes: 0 success, 1 selftest failure, 2 input error, 3 numerical
// failure. KREINSPEC_RTOL overrides the default tolerance; --rtol wins.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kreinspec/acceptance.hpp"
#include "kreinspec/kreinspec.hpp"
#include "kreinspec/report.hpp"

namespace {

using namespace kreinspec;

struct CommonArgs {
  double rtol = 0.0;  // 0 means "not set"
  std::string out_path;
  bool json = false;
};

Tolerances make_tolerances(const CommonArgs& args) {
  Tolerances t;
  if (args.rtol > 0.0) {
    t.rtol = args.rtol;
    t.relation_tol = args.rtol;
  }
  return t;
}

void emit(const CommonArgs& args, const AnalysisReport& rep) {
  std::ostringstream body;
  if (args.json)
    body << to_json(rep).dump(2) << "\n";
  else
    print_report(body, rep);
  std::cout << body.str();
  if (!args.out_path.empty()) {
    std::ofstream f(args.out_path);
    if (!f) throw ParseError("cannot open output file '" + args.out_path + "'");
    f << body.str();
  }
}

int run_analyze(const std::string& matrix_path, const std::string& metric_path,
                const CommonArgs& args) {
  const ComplexMatrix h = read_matrix_file(matrix_path);
  std::optional<ComplexMatrix> eta;
  if (!metric_path.empty()) eta = read_matrix_file(metric_path);
  const AnalysisReport rep = analyze(h, eta, make_tolerances(args), matrix_path);
  emit(args, rep);
  return 0;
}

void print_fourlevel_header(std::ostream& out, const FourLevelParams& p) {
  out << "four-level model: a0 = " << format_real(p.a0) << ", A = " << format_complex(p.A)
      << ", B = " << format_complex(p.B) << "\n";
  out << "  discriminant D = " << format_real(discriminant(p)) << "\n";
}

int run_fourlevel(const FourLevelParams& p, const CommonArgs& args) {
  const ComplexMatrix h = build_hamiltonian(p);
  const OmegaResult om = omega(p);

  if (om.kind == SpectrumKind::Zero) {
    print_fourlevel_header(std::cout, p);
    std::cout << "phase: ExceptionalPoint (coalesced eigenvalues, defective)\n";
    std::cerr << "numerical failure: exceptional point, no eigensystem\n";
    return 3;
  }
  if (om.kind == SpectrumKind::Broken) {
    print_fourlevel_header(std::cout, p);
    std::cout << "phase: Broken; eigenvalues +/- " << format_real(om.value)
              << "i (conjugate pair, each twofold)\n";
    std::cerr << "numerical failure: BrokenPhase, no real spectrum\n";
    return 3;
  }

  AnalyticEigensystem sys;
  try {
    sys = analytic_eigensystem(p);
  } catch (const SingularNormalization& e) {
    print_fourlevel_header(std::cout, p);
    std::cout << "phase: Unbroken, but the closed-form normalization is singular\n";
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }

  const Tolerances tols = make_tolerances(args);
  const AnalysisReport rep = analyze(h, indefinite_metric_4(), tols, "four-level model");
  const AbnormalReport ab = abnormal_relations_check(sys, tols.rtol);

  // how far each closed-form eigenvector is from the numeric eigenspace of
  // its eigenvalue (projection through the spectral projector)
  double subspace_worst = 0.0;
  {
    const BiorthoSystem numeric = build_biortho(h, tols.group_tol, tols.rtol);
    const struct {
      const ComplexVector* v;
      double e;
    } list[] = {{&sys.psi_mp, -sys.omega},
                {&sys.psi_mm, -sys.omega},
                {&sys.psi_pp, sys.omega},
                {&sys.psi_pm, sys.omega}};
    for (const auto& item : list) {
      ComplexVector projected(4);
      for (const BiorthoLevel& l : numeric.levels) {
        if (std::abs(l.value - Complex(item.e)) > 1e-6 * std::max(numeric.h_norm, 1.0)) continue;
        projected = projected + inner(l.phi, *item.v) * l.psi;
      }
      subspace_worst =
          std::max(subspace_worst, (projected - *item.v).norm() / item.v->norm());
    }
  }

  if (args.json) {
    nlohmann::ordered_json j;
    j["model"] = {{"a0", p.a0},
                  {"A", format_complex(p.A)},
                  {"B", format_complex(p.B)},
                  {"discriminant", discriminant(p)},
                  {"omega", sys.omega},
                  {"k", sys.k}};
    j["abnormal_relations"] = {{"max_pairing_residual", ab.max_pairing_residual},
                               {"completeness_residual", ab.completeness_residual},
                               {"k_residual", ab.k_residual},
                               {"all_ok", ab.all_ok}};
    j["analytic_vs_numeric_subspace_residual"] = subspace_worst;
    j["analysis"] = to_json(rep);
    std::cout << j.dump(2) << "\n";
    if (!args.out_path.empty()) {
      std::ofstream f(args.out_path);
      if (!f) throw ParseError("cannot open output file '" + args.out_path + "'");
      f << j.dump(2) << "\n";
    }
    return 0;
  }

  std::ostringstream body;
  print_fourlevel_header(body, p);
  body << "  Omega = " << format_real(sys.omega) << ", k = " << format_real(sys.k)
       << " (k residual " << detail::fmt_residual(ab.k_residual) << ")\n";
  body << "abnormal relations: max pairing residual "
       << detail::fmt_residual(ab.max_pairing_residual) << ", signed completeness "
       << detail::fmt_residual(ab.completeness_residual) << (ab.all_ok ? " [ok]" : " [VIOLATED]")
       << "\n";
  body << "analytic vs numeric eigenspaces: projection residual "
       << detail::fmt_residual(subspace_worst) << "\n";
  print_report(body, rep);
  std::cout << body.str();
  if (!args.out_path.empty()) {
    std::ofstream f(args.out_path);
    if (!f) throw ParseError("cannot open output file '" + args.out_path + "'");
    f << body.str();
  }
  return 0;
}

int run_sweep(const FourLevelParams& base, const std::string& axis_str, const std::string& range,
              std::size_t steps, const std::string& out_path) {
  const std::optional<SweepAxis> axis = parse_axis(axis_str);
  if (!axis)
    throw InvalidValue("sweep: unknown axis '" + axis_str +
                       "' (expected a0, absA, absB, argA or argB)");
  const std::size_t colon = range.find(':');
  if (colon == std::string::npos)
    throw ParseError("sweep: --range expects lo:hi, got '" + range + "'");
  double lo, hi;
  try {
    lo = std::stod(range.substr(0, colon));
    hi = std::stod(range.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParseError("sweep: bad range '" + range + "'");
  }

  const SweepResult res = sweep_exceptional_point(base, *axis, lo, hi, steps);

  std::ostringstream body;
  body << "# kreinspec sweep axis=" << axis_name(*axis) << " a0=" << format_real(base.a0)
       << " A=" << format_complex(base.A) << " B=" << format_complex(base.B) << "\n";
  body << "# columns: t D phase\n";
  body << "# EP rows: EP location D(location) bracket_lo bracket_hi\n";
  for (const SweepPoint& pt : res.points)
    body << format_real(pt.t) << " " << format_real(pt.d) << " " << to_string(pt.phase) << "\n";
  for (const EpBracket& ep : res.exceptional_points) {
    const double d = discriminant(params_on_axis(base, *axis, ep.location));
    body << "EP " << format_real(ep.location) << " " << format_real(d) << " "
         << format_real(ep.lo) << " " << format_real(ep.hi) << "\n";
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot open output file '" + out_path + "'");
    f << body.str();
    std::cout << "sweep: " << res.points.size() << " points, "
              << res.exceptional_points.size() << " exceptional point(s) -> " << out_path << "\n";
  }
  return 0;
}

int run_selftest(const CommonArgs& args) {
  std::optional<double> override;
  if (args.rtol > 0.0) override = args.rtol;
  const std::vector<CriterionResult> results = run_acceptance(override);

  bool all = true;
  if (args.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const CriterionResult& r : results) {
      j.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"worst", r.worst},
                   {"threshold", r.threshold},
                   {"detail", r.detail}});
      all = all && r.pass;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const CriterionResult& r : results) {
      std::printf("[%2d/10] %s  %-62s worst %.3e  tol %.3e%s%s\n", r.id,
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.threshold,
                  r.detail.empty() ? "" : "  -- ", r.detail.c_str());
      all = all && r.pass;
    }
    std::printf("selftest: %s\n", all ? "all criteria passed" : "FAILURES present");
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-Hermitian PT-symmetry toolkit: biorthogonal eigensystems, "
               "metric classification, PT doublets and Krein decompositions"};
  app.require_subcommand(1);

  CommonArgs args;

  auto add_common = [&](CLI::App* cmd, bool with_out = true) {
    cmd->add_option("--rtol", args.rtol, "relative tolerance override")
        ->envname("KREINSPEC_RTOL");
    if (with_out) cmd->add_option("--out", args.out_path, "also write the report to a file");
    cmd->add_flag("--json", args.json, "machine-readable output");
  };

  std::string matrix_path, metric_path;
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "analyze a matrix file");
  cmd_analyze->add_option("matrix", matrix_path, "matrix file (dim N header)")->required();
  cmd_analyze->add_option("--metric", metric_path, "metric operator file");
  add_common(cmd_analyze);

  double a0 = 0.0;
  std::string a_str = "0", b_str = "0";
  CLI::App* cmd_fourlevel = app.add_subcommand("fourlevel", "analyze the four-level model");
  cmd_fourlevel->add_option("--a0", a0, "level splitting")->required();
  cmd_fourlevel->add_option("--A", a_str, "complex coupling A (e.g. 0.5+0.3i)")->required();
  cmd_fourlevel->add_option("--B", b_str, "complex coupling B")->required();
  add_common(cmd_fourlevel);

  std::string axis, range, sweep_out;
  std::size_t steps = 101;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "phase sweep along one parameter axis");
  cmd_sweep->add_option("--a0", a0, "level splitting")->required();
  cmd_sweep->add_option("--A", a_str, "complex coupling A")->required();
  cmd_sweep->add_option("--B", b_str, "complex coupling B")->required();
  cmd_sweep->add_option("--axis", axis, "a0 | absA | absB | argA | argB")->required();
  cmd_sweep->add_option("--range", range, "lo:hi")->required();
  cmd_sweep->add_option("--steps", steps, "grid points (>= 2)");
  cmd_sweep->add_option("--out", sweep_out, "output data file");

  CLI::App* cmd_selftest = app.add_subcommand("selftest", "run the built-in acceptance suite");
  add_common(cmd_selftest, /*with_out=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cmd_analyze) return run_analyze(matrix_path, metric_path, args);
    if (*cmd_fourlevel || *cmd_sweep) {
      FourLevelParams p{a0, parse_complex(a_str), parse_complex(b_str)};
      if (!p.finite()) throw InvalidValue("non-finite model parameters");
      if (*cmd_fourlevel) return run_fourlevel(p, args);
      return run_sweep(p, axis, range, steps, sweep_out);
    }
    if (*cmd_selftest) return run_selftest(args);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidValue& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
