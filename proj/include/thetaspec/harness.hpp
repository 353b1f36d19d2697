#ifndef THETASPEC_HARNESS_HPP
#define THETASPEC_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "thetaspec/hyperbolic.hpp"
#include "thetaspec/types.hpp"

namespace thetaspec {

/// Test observable for the equidistribution suite.
struct ObservablePhi {
  enum class Kind { height_power, capped_height_power };
  Kind kind = Kind::capped_height_power;
  double delta = 0.25;        ///< phi grows like ht^{1/2 - delta}
  std::optional<double> cap;  ///< capped kind: ht replaced by min(ht, cap)

  double growth_exponent() const { return 0.5 - delta; }
  /// Throws InvalidParameter unless 0 < delta <= 1/2 and cap (if any) > 0.
  void validate() const;
  InvariantFunction function() const;
};

struct HarnessConfig {
  double eps = 1e-15;          ///< truncation target for lattice sums
  double grid_Y = 1e24;        ///< cusp cutoff of the quadrature grids
  int grid_res = 16;           ///< Gauss-Legendre points per panel direction
  double contour_T = 30.0;     ///< critical-line truncation
  std::uint64_t seed = 20240611;
  int threads = 1;
  double c_bound = 5.0;        ///< bound on the normalized Hecke discrepancy R(n)
  bool record_timing = true;   ///< false writes wall_time_s = 0 for reproducible files
  std::vector<std::uint64_t> theorem1_n = {1, 3, 5, 7, 9, 11, 15, 21, 25, 35, 49};
  ObservablePhi phi;

  /// Throws InvalidParameter on out-of-range values.
  void validate() const;
};

/// Kind of reference a report is compared against.
enum class ReferenceKind { identity, closed_form, cross_method, bound };
std::string to_string(ReferenceKind k);

/// One checked case. pass is abs_error <= tolerance. For property checks
/// (bounds, trends, counts) abs_error holds the quantity being bounded.
struct VerificationReport {
  std::string suite;
  std::string case_id;
  Complex computed;
  Complex reference;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time_s = 0.0;
  ReferenceKind reference_kind = ReferenceKind::cross_method;
};

/// Builds a report with pass derived from abs_error and tolerance.
VerificationReport make_report(std::string suite, std::string case_id, Complex computed, Complex reference,
                               double abs_error, double tolerance, ReferenceKind kind, double wall_time_s);

std::vector<VerificationReport> suite_poisson(const HarnessConfig& cfg);
std::vector<VerificationReport> suite_mellin(const HarnessConfig& cfg);
std::vector<VerificationReport> suite_contour(const HarnessConfig& cfg);
std::vector<VerificationReport> suite_means(const HarnessConfig& cfg);
/// Uses cfg.theorem1_n (all odd) and cfg.phi.
std::vector<VerificationReport> suite_theorem1(const HarnessConfig& cfg);
/// (s - 1) E*_s(i) near s = 1.
std::vector<VerificationReport> suite_residue(const HarnessConfig& cfg);
/// |c_n(1/2 + it)| <= tau(n) n^{-1/2} for n <= 200.
std::vector<VerificationReport> suite_eigenbound(const HarnessConfig& cfg);
/// Functional equations, invariances, Hecke multiplicativity, cross-method agreement.
std::vector<VerificationReport> suite_invariants(const HarnessConfig& cfg);

/// Suite names accepted by run_suite, in the order run by "all".
const std::vector<std::string>& suite_names();
/// Runs one named suite or "all"; throws InvalidParameter for unknown names.
std::vector<VerificationReport> run_suite(const std::string& name, const HarnessConfig& cfg);

bool all_pass(const std::vector<VerificationReport>& reports);

/// Header plus one row per report; floats with 17 significant digits.
void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports);
/// Array of objects with the CSV fields (plus reference_kind).
void write_json(std::ostream& os, const std::vector<VerificationReport>& reports);

}  // namespace thetaspec

#endif  // THETASPEC_HARNESS_HPP
