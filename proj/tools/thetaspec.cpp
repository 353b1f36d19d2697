// Command-line front end: point evaluations, verification suites and reports.
//
// Exit codes: 0 when every check passes, 1 when any check fails,
// 2 on usage, configuration or domain errors.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "thetaspec/eisenstein.hpp"
#include "thetaspec/harness.hpp"
#include "thetaspec/specfun.hpp"
#include "thetaspec/thetaforms.hpp"

using namespace thetaspec;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_value(Complex v) {
  if (v.imag() == 0.0) {
    std::printf("%.17g\n", v.real());
  } else {
    std::printf("%.17g%+.17gi\n", v.real(), v.imag());
  }
}

struct EvalArgs {
  std::string what;
  std::vector<double> at;
  std::vector<double> s;
};

int run_eval(const EvalArgs& a, const HarnessConfig& cfg) {
  auto need_z = [&]() {
    if (a.at.size() != 2) throw InvalidParameter("eval " + a.what + " needs --at <x> <y>");
    return HalfPlanePoint(a.at[0], a.at[1]);
  };
  auto need_s = [&]() {
    if (a.s.size() != 2) throw InvalidParameter("eval " + a.what + " needs --s <sigma> <t>");
    return SpectralPoint(a.s[0], a.s[1]);
  };
  const TruncationPolicy pol{cfg.eps, true};
  if (a.what == "theta") {
    print_value(jacobi_theta(need_z(), {cfg.eps}));
  } else if (a.what == "theta2") {
    print_value(squared_theta_direct(need_z(), pol));
  } else if (a.what == "eis") {
    const auto z = need_z();
    const auto s = need_s();
    print_value(s.sigma() > 1.0 ? eisenstein_direct(s, z, cfg.eps * 10.0).value
                                : eisenstein_fourier(s, z, cfg.eps * 10.0).value);
  } else if (a.what == "eisstar") {
    const auto z = need_z();
    print_value(eisenstein_star(need_s(), z, cfg.eps * 10.0));
  } else if (a.what == "xi") {
    print_value(xi(need_s()));
  } else if (a.what == "f") {
    print_value(f_profile(need_z().y(), {cfg.eps}));
  }
  return 0;
}

void print_reports(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    std::printf("%s  %-10s %-48s err=%.3e tol=%.3e\n", r.pass ? "PASS" : "FAIL", r.suite.c_str(), r.case_id.c_str(),
                r.abs_error, r.tolerance);
  }
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.pass ? 0 : 1;
  std::printf("%zu checks, %zu failed\n", reports.size(), failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta, Eisenstein and Hecke numerics with verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file; keys are the long flag names");

  HarnessConfig cfg;
  std::vector<std::uint64_t> n_list;
  std::optional<double> phi_cap;
  app.add_option("--eps", cfg.eps, "Truncation target for lattice sums")->capture_default_str();
  app.add_option("--grid-Y", cfg.grid_Y, "Cusp cutoff of the quadrature grids")->capture_default_str();
  app.add_option("--grid-res", cfg.grid_res, "Gauss-Legendre points per panel direction")->capture_default_str();
  app.add_option("--contour-T", cfg.contour_T, "Critical-line truncation")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for random panels")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  app.add_option("--c-bound", cfg.c_bound, "Bound on R(n)")->capture_default_str();
  app.add_option("--record-timing", cfg.record_timing, "Write wall times (false gives reproducible files)")
      ->capture_default_str();
  app.add_option("--n-list", n_list, "Odd n for the Hecke decay suite");
  app.add_option("--phi-delta", cfg.phi.delta, "Observable exponent is 1/2 - delta")->capture_default_str();
  app.add_option("--phi-cap", phi_cap, "Cap the height inside the observable");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate one quantity");
  eval->add_option("what", eval_args.what, "theta | theta2 | eis | eisstar | xi | f")
      ->required()
      ->check(CLI::IsMember({"theta", "theta2", "eis", "eisstar", "xi", "f"}));
  eval->add_option("--at", eval_args.at, "Point x y")->expected(2);
  eval->add_option("--s", eval_args.s, "Spectral parameter sigma t")->expected(2);

  std::string suite;
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name or all")->required()->check(CLI::IsMember(suite_choices));

  std::string format = "csv", out_path, report_suite = "all";
  auto* report = app.add_subcommand("report", "Run suites and write a report file");
  report->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  report->add_option("--out", out_path, "Output path")->required();
  report->add_option("--suite", report_suite, "Suite name or all")
      ->check(CLI::IsMember(suite_choices))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!n_list.empty()) cfg.theorem1_n = n_list;
    if (phi_cap) cfg.phi.cap = phi_cap;
    cfg.validate();

    if (*eval) return run_eval(eval_args, cfg);

    if (*verify) {
      const auto reports = run_suite(suite, cfg);
      print_reports(reports);
      return all_pass(reports) ? 0 : kExitFail;
    }

    const auto reports = run_suite(report_suite, cfg);
    std::ofstream os(out_path);
    if (!os) throw InvalidParameter("cannot open " + out_path);
    if (format == "json") {
      write_json(os, reports);
    } else {
      write_csv(os, reports);
    }
    os.close();
    if (!os) throw InvalidParameter("failed writing " + out_path);
    return all_pass(reports) ? 0 : kExitFail;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
