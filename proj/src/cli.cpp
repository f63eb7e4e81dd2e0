#include "iso/cli.hpp"

#include "iso/barrier.hpp"
#include "iso/errors.hpp"
#include "iso/families.hpp"
#include "iso/functionals.hpp"
#include "iso/optimality.hpp"
#include "iso/plot.hpp"
#include "iso/shape_io.hpp"
#include "iso/variational.hpp"
#include "iso/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>

namespace iso {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

std::string solution_line(const VariationalSolution& s) {
  return fmt::format("{},{:.12f},{},{},{:.3e},{:.3e},{}\n", s.method, s.m, s.iterations,
                     s.converged ? "true" : "false", s.norm_identity_gap(),
                     s.max_constraint_residual(), s.switching_points.size());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for the quantitative isoperimetric inequality", "iso"};
  app.require_subcommand(1);
  std::function<int()> action;

  // shape eval
  auto* shape = app.add_subcommand("shape", "Evaluate a shape file")->require_subcommand(1);
  auto* eval = shape->add_subcommand("eval", "Print δ, λ0, λ and friends as one CSV row");
  std::string shape_file, svg_path;
  bool no_fraenkel = false, as_json = false;
  eval->add_option("file", shape_file, "Shape JSON file")->required();
  eval->add_flag("--no-fraenkel", no_fraenkel, "Skip the Fraenkel optimizer");
  eval->add_flag("--json", as_json, "JSON instead of CSV");
  eval->add_option("--svg", svg_path, "Also draw the shape");
  eval->callback([&] {
    action = [&] {
      const Shape s = load_shape(shape_file);
      const auto r = evaluate(s, !no_fraenkel);
      if (as_json) {
        out << report_json(r) << "\n";
      } else {
        out << report_csv_header() << "\n" << report_csv_row(r) << "\n";
      }
      if (!svg_path.empty()) write_file(svg_path, svg_shape(s));
      return kExitOk;
    };
  });

  // family scan / dumbbell
  auto* family = app.add_subcommand("family", "Shape family sweeps")->require_subcommand(1);
  auto* fscan = family->add_subcommand("scan", "Sweep a family; CSV param,delta,lambda0,lambda,ratio");
  std::string family_name, scan_out, scan_svg;
  double lo = 0.0, hi = 0.0;
  int steps = 0;
  bool geometric = false;
  fscan->add_option("family", family_name, "stadium | counterexample")
      ->required()
      ->check(CLI::IsMember({"stadium", "counterexample"}));
  fscan->add_option("--lo", lo, "First parameter")->required();
  fscan->add_option("--hi", hi, "Last parameter")->required();
  fscan->add_option("--steps", steps, "Number of parameter values")->required()->check(CLI::PositiveNumber);
  fscan->add_option("--out", scan_out, "CSV file (standard output when omitted)");
  fscan->add_option("--svg", scan_svg, "Plot of the ratio against the parameter");
  fscan->add_flag("--geometric", geometric, "Stadium: geometric pipeline instead of closed forms");
  fscan->callback([&] {
    action = [&] {
      const Family f = family_name == "stadium" ? Family::Stadium : Family::Counterexample;
      const auto rows = scan(f, lo, hi, steps, geometric);
      const std::string csv = scan_csv(rows);
      if (scan_out.empty()) {
        out << csv;
      } else {
        write_file(scan_out, csv);
      }
      if (!scan_svg.empty()) {
        Series s{"delta/lambda0^2", {}, {}, f == Family::Counterexample};
        for (const auto& r : rows) {
          s.x.push_back(r.parameter);
          s.y.push_back(r.ratio);
        }
        write_file(scan_svg, svg_plot({s}, family_name + " family",
                                      f == Family::Stadium ? "theta" : "n", "delta / lambda0^2"));
      }
      return kExitOk;
    };
  });
  auto* dumbbell = family->add_subcommand("dumbbell", "Closed-form dumbbell record");
  dumbbell->callback([&] {
    action = [&] {
      out << scan_csv({dumbbell_report()});
      return kExitOk;
    };
  });

  // opepl solve
  auto* opepl = app.add_subcommand("opepl", "Linearized variational problem")->require_subcommand(1);
  auto* solve = opepl->add_subcommand("solve", "Compute m with one or both solvers");
  std::string method = "both", profile_out;
  int harmonics = 256, grid = 4096, restarts = 32;
  std::uint64_t seed = 0;
  solve->add_option("--method", method, "fourier | fixedpoint | both")
      ->check(CLI::IsMember({"fourier", "fixedpoint", "both"}));
  solve->add_option("--harmonics", harmonics, "Fourier harmonics N")->check(CLI::Range(8, 100000));
  solve->add_option("--grid", grid, "Grid size M")->check(CLI::Range(1024, 1 << 22));
  solve->add_option("--restarts", restarts, "Fourier multi-starts")->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed, "Seed for the Fourier starts");
  solve->add_option("--profile", profile_out, "CSV theta,u0 of the last solution");
  solve->callback([&] {
    action = [&] {
      out << "method,m,iterations,converged,identity_gap,constraint_residual,switching_points\n";
      std::vector<VariationalSolution> sols;
      if (method != "fourier") sols.push_back(opepl_solve_fixedpoint(square_wave_sign(grid)));
      if (method != "fixedpoint") sols.push_back(opepl_solve_fourier(harmonics, grid, restarts, seed));
      for (const auto& s : sols) out << solution_line(s);
      if (sols.size() == 2) out << fmt::format("difference,{:.3e}\n", std::abs(sols[0].m - sols[1].m));
      if (!profile_out.empty()) {
        const auto& u = sols.back().u0;
        std::string csv = "theta,u0\n";
        for (Eigen::Index k = 0; k < u.size(); ++k) {
          csv += fmt::format("{:.12g},{:.12g}\n", kTwoPi * k / u.size(), u[k]);
        }
        write_file(profile_out, csv);
      }
      return kExitOk;
    };
  });

  // bound m-lower
  auto* bound = app.add_subcommand("bound", "Lower bound on m")->require_subcommand(1);
  auto* mlower = bound->add_subcommand("m-lower", "Barrier integral and the bound on m");
  std::string table_out, bound_svg;
  int rows = 401;
  mlower->add_option("--table", table_out, "CSV x,H,M,H_star,M_star");
  mlower->add_option("--rows", rows, "Rows of the table")->check(CLI::Range(2, 1000000));
  mlower->add_option("--svg", bound_svg, "Plot of H, M and their rearrangements");
  mlower->callback([&] {
    action = [&] {
      const double integral = barrier_integral();
      const double m = m_lower_bound();
      const auto c = barrier_check(10000);
      out << "quantity,value\n";
      out << fmt::format("integral,{:.10f}\nm_lower,{:.10f}\npi_over_4_m_lower,{:.10f}\n", integral,
                         m, kPi / 4.0 * m);
      out << fmt::format("min_M_minus_H,{:.3e}\nmin_Mstar_minus_Hstar,{:.3e}\n", c.min_gap,
                         c.min_star_gap);
      if (!table_out.empty()) write_file(table_out, kernel_table_csv(rows));
      if (!bound_svg.empty()) {
        std::vector<Series> s{{"H", {}, {}}, {"M", {}, {}}, {"H*", {}, {}}, {"M*", {}, {}}};
        for (int i = 0; i < 401; ++i) {
          const double x = kPi * i / 400.0;
          for (auto& e : s) e.x.push_back(x);
          s[0].y.push_back(kernel_H(x));
          s[1].y.push_back(barrier_M(x));
          s[2].y.push_back(kernel_H_star(x));
          s[3].y.push_back(barrier_M_star(x));
        }
        write_file(bound_svg, svg_plot(s, "Barrier and rearrangements", "x", "value"));
      }
      return kExitOk;
    };
  });

  // stadium roots
  auto* stadium = app.add_subcommand("stadium", "Optimal stadium")->require_subcommand(1);
  auto* roots = stadium->add_subcommand("roots", "Roots of the two stadium equations");
  roots->callback([&] {
    action = [&] {
      const double a = eqop1_root();
      const double b = eqop2_root();
      const auto rec = stadium_profile(a);
      out << "quantity,value\n";
      out << fmt::format("eqop1_root,{:.12f}\neqop2_root,{:.12f}\ndifference,{:.3e}\n", a, b,
                         std::abs(a - b));
      out << fmt::format("delta,{:.10f}\nlambda0,{:.10f}\nratio,{:.10f}\n", rec.delta,
                         rec.lambda0, rec.ratio);
      return kExitOk;
    };
  });

  // optimality residual
  auto* optimality = app.add_subcommand("optimality", "Curvature optimality condition")->require_subcommand(1);
  auto* residual = optimality->add_subcommand("residual", "CSV angle,C,predicted,residual on the convex parts");
  std::string residual_file, residual_out;
  int samples = 2000;
  residual->add_option("file", residual_file, "Normalized stadium or radial shape JSON")->required();
  residual->add_option("--samples", samples, "Boundary samples")->check(CLI::Range(8, 10000000));
  residual->add_option("--out", residual_out, "CSV file; a summary goes to standard output");
  residual->callback([&] {
    action = [&] {
      const auto r = optimality_residual(load_shape(residual_file), samples);
      const std::string csv = optimality_csv(r);
      if (residual_out.empty()) {
        out << csv;
        return kExitOk;
      }
      write_file(residual_out, csv);
      out << "quantity,value\n";
      out << fmt::format("delta,{:.10f}\nlambda0,{:.10f}\nmu1,{:.3e}\nmu2,{:.3e}\n", r.delta,
                         r.lambda0, r.mu1, r.mu2);
      out << fmt::format("length_in,{:.10f}\nlength_out,{:.10f}\n", r.partition.length_in,
                         r.partition.length_out);
      out << fmt::format("samples,{}\nskipped,{}\nmax_abs_residual,{:.3e}\n", r.samples.size(),
                         r.skipped, r.max_abs_residual);
      return kExitOk;
    };
  });

  // verify all
  auto* verify = app.add_subcommand("verify", "Invariant suites")->require_subcommand(1);
  auto* all = verify->add_subcommand("all", "Run every suite and print a summary table");
  std::uint64_t verify_seed = 0;
  all->add_option("--seed", verify_seed, "Seed for the randomized suites")->required();
  all->callback([&] {
    action = [&] {
      const auto results = verify_all(verify_seed);
      out << verify_table(results);
      const bool ok = std::all_of(results.begin(), results.end(),
                                  [](const SuiteResult& r) { return r.passed(); });
      return ok ? kExitOk : kExitVerifyFailed;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    return action ? action() : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace iso
