// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "thetaspec/harness.hpp"

using namespace thetaspec;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> suites;
  double time_limit_s;
  std::size_t expected_count;  ///< 0 means any
};

double worst_ratio(const std::vector<VerificationReport>& rs) {
  double w = 0.0;
  for (const auto& r : rs) {
    if (r.tolerance > 0.0) w = std::max(w, r.abs_error / r.tolerance);
  }
  return w;
}

}  // namespace

int main() {
  HarnessConfig cfg;
  cfg.record_timing = true;

  const std::vector<Criterion> criteria = {
      {1, "Poisson identity at 100 points", {"poisson"}, 30.0, 100},
      {2, "Mellin identity at 12 points", {"mellin"}, 10.0, 12},
      {3, "contour identity at T = 30, error decreasing in T", {"contour"}, 300.0, 0},
      {4, "mean values and refinement stability", {"means"}, 300.0, 0},
      {5, "residue at s = 1", {"residue"}, 60.0, 2},
      {6, "Hecke decay of |theta|^2 against ht^{1/4}", {"theorem1"}, 600.0, 0},
      {7, "eigenvalue bound for n <= 200", {"eigenbound"}, 60.0, 3},
      {8, "functional equations, invariance, multiplicativity, cross-method", {"invariants"}, 120.0, 0},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<VerificationReport> reports;
    std::string note;
    try {
      for (const auto& s : c.suites) {
        auto part = run_suite(s, cfg);
        reports.insert(reports.end(), part.begin(), part.end());
      }
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.pass ? 0 : 1;
    const bool count_ok = c.expected_count == 0 ? !reports.empty() : reports.size() == c.expected_count;
    const bool time_ok = elapsed <= c.time_limit_s;
    const bool ok = note.empty() && count_ok && failed == 0 && time_ok;
    all_ok = all_ok && ok;
    if (note.empty()) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%zu checks, %zu failed, worst err/tol %.2e, %.1fs (limit %.0fs)%s",
                    reports.size(), failed, worst_ratio(reports), elapsed, c.time_limit_s,
                    count_ok ? "" : ", unexpected check count");
      note = buf;
    }
    std::printf("%s criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), note.c_str());
    for (const auto& r : reports) {
      if (!r.pass) std::printf("    failed %s/%s err=%.3e tol=%.3e\n", r.suite.c_str(), r.case_id.c_str(), r.abs_error,
                               r.tolerance);
    }
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
