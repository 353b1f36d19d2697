#include "thetaspec/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numeric>
#include <random>

#include "thetaspec/eisenstein.hpp"
#include "thetaspec/hecke.hpp"
#include "thetaspec/specfun.hpp"
#include "thetaspec/thetaforms.hpp"

namespace thetaspec {
namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double lap() {
    if (!enabled_) return 0.0;
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_id(HalfPlanePoint z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "z=%.6g%+.6gi", z.x(), z.y());
  return buf;
}

std::string spectral_id(Complex s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "s=%.6g%+.6gi", s.real(), s.imag());
  return buf;
}

// one generator per suite; the tag keeps suites independent of run order
std::mt19937_64 suite_rng(const HarnessConfig& cfg, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), tag};
  return std::mt19937_64(seq);
}

double relative_scale(Complex v) { return std::max(1.0, std::abs(v)); }

}  // namespace

void ObservablePhi::validate() const {
  if (!(delta > 0.0 && delta <= 0.5)) throw InvalidParameter("phi: delta must lie in (0, 1/2]");
  if (cap && !(*cap > 0.0)) throw InvalidParameter("phi: cap must be positive");
}

InvariantFunction ObservablePhi::function() const {
  validate();
  const double exponent = growth_exponent();
  if (kind == Kind::height_power || !cap) return height_power(exponent);
  const double c = *cap;
  return {Group::sl2z,
          [exponent, c](const TransportedPoint& p) {
            return Complex(std::pow(std::min(height(p.sl2_representative()), c), exponent));
          },
          "min(ht, cap)^a"};
}

void HarnessConfig::validate() const {
  if (!(eps > 0.0 && eps < 1e-3)) throw InvalidParameter("eps must lie in (0, 1e-3)");
  if (!(grid_Y > kArcPanelTop)) throw InvalidParameter("grid-Y must exceed 1.2");
  if (grid_res < 2 || grid_res > 256) throw InvalidParameter("grid-res must lie in [2, 256]");
  if (!(contour_T > 0.0)) throw InvalidParameter("contour-T must be positive");
  if (threads < 1) throw InvalidParameter("threads must be at least 1");
  if (!(c_bound > 0.0)) throw InvalidParameter("c-bound must be positive");
  if (theorem1_n.empty()) throw InvalidParameter("the n list is empty");
  for (auto n : theorem1_n) {
    if (n == 0 || n % 2 == 0) throw InvalidParameter("n list entries must be odd and positive");
  }
  phi.validate();
}

std::string to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::identity: return "identity";
    case ReferenceKind::closed_form: return "closed_form";
    case ReferenceKind::cross_method: return "cross_method";
    case ReferenceKind::bound: return "bound";
  }
  return "unknown";
}

VerificationReport make_report(std::string suite, std::string case_id, Complex computed, Complex reference,
                               double abs_error, double tolerance, ReferenceKind kind, double wall_time_s) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.case_id = std::move(case_id);
  r.computed = computed;
  r.reference = reference;
  r.abs_error = abs_error;
  r.tolerance = tolerance;
  r.pass = abs_error <= tolerance;  // NaN fails
  r.wall_time_s = wall_time_s;
  r.reference_kind = kind;
  return r;
}

std::vector<VerificationReport> suite_poisson(const HarnessConfig& cfg) {
  constexpr double kTol = 1e-8;
  std::vector<HalfPlanePoint> points = {{0.0, 1.0},  {0.5, 0.5},  {0.25, 0.25}, {-0.3, 0.8}, {0.1, 2.0},
                                        {0.0, 0.1}, {0.45, 0.05}, {-0.5, 3.0},  {0.2, 5.0}, {0.37, 0.33}};
  auto rng = suite_rng(cfg, 1);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), ly(std::log(0.05), std::log(5.0));
  while (points.size() < 100) {
    const double x = ux(rng);
    points.emplace_back(x, std::exp(ly(rng)));
  }
  const TruncationPolicy pol{cfg.eps};
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double direct = squared_theta_direct(points[i], pol);
    const double poisson = squared_theta_poisson(points[i], pol);
    const std::string id = (i < 10 ? "panel/" : "random/") + point_id(points[i]);
    out.push_back(make_report("poisson", id, poisson, direct, std::abs(poisson - direct), kTol,
                              ReferenceKind::identity, sw.lap()));
  }
  return out;
}

std::vector<VerificationReport> suite_mellin(const HarnessConfig& cfg) {
  constexpr double kRelTol = 1e-7;
  const std::vector<Complex> samples = {{2.0, 0.0}, {1.5, 0.0}, {0.75, 0.0}, {1.0, 0.0}, {3.0, 0.0},  {1.2, 3.0},
                                        {1.2, -7.0}, {0.6, 1.0}, {2.5, 5.0}, {0.9, 10.0}, {1.7, -2.5}, {4.0, 0.5}};
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  for (const Complex s : samples) {
    const Complex computed = mellin_f(s);
    // f~(2) = 2 xi(4) = pi^2/45
    const bool anchor = s == Complex(2.0, 0.0);
    const Complex reference = anchor ? Complex(kPi * kPi / 45.0) : 2.0 * xi(2.0 * s);
    out.push_back(make_report("mellin", spectral_id(s), computed, reference, std::abs(computed - reference),
                              kRelTol * std::abs(reference),
                              anchor ? ReferenceKind::closed_form : ReferenceKind::identity, sw.lap()));
  }
  return out;
}

std::vector<VerificationReport> suite_contour(const HarnessConfig& cfg) {
  constexpr double kTol = 1e-5;
  const std::vector<HalfPlanePoint> points = {{0.0, 1.0}, {0.0, 2.0}, {0.25, 2.0}, {0.4, 0.9}, {-0.3, 1.5}};
  const double T = cfg.contour_T;
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  int violations = 0;
  double worst_imag = 0.0;
  for (const auto& z : points) {
    const auto full = contour_reconstruct(z, T, 16, cfg.threads);
    out.push_back(make_report("contour", point_id(z) + fmt("/T=%g", T), full.value, full.reference, full.error, kTol,
                              ReferenceKind::identity, sw.lap()));
    worst_imag = std::max(worst_imag, std::abs(full.imaginary_residue));
    const double e1 = contour_reconstruct(z, T / 3.0, 16, cfg.threads).error;
    const double e2 = contour_reconstruct(z, 2.0 * T / 3.0, 16, cfg.threads).error;
    if (!(e1 > e2 && e2 > full.error)) ++violations;
  }
  out.push_back(make_report("contour", fmt("error_decreasing_in_T/T=%g", T / 3.0) + fmt(",%g", 2.0 * T / 3.0) +
                                           fmt(",%g", T),
                            static_cast<double>(violations), 0.0, static_cast<double>(violations), 0.0,
                            ReferenceKind::bound, sw.lap()));
  out.push_back(make_report("contour", "imaginary_part", worst_imag, 0.0, worst_imag, 1e-8, ReferenceKind::identity,
                            sw.lap()));
  return out;
}

std::vector<VerificationReport> suite_means(const HarnessConfig& cfg) {
  constexpr double kTol = 2e-3;
  constexpr double kRefineTol = 1e-3;
  const auto one = constant_function(1.0);
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);

  const auto e = e_incomplete_function({cfg.eps, true});
  const auto grid_e = build_grid(Group::sl2z, cfg.grid_Y, cfg.grid_res);
  const Complex mean_e = inner_product(one, e, grid_e, cfg.threads).value;
  out.push_back(make_report("means", "<E,1>", mean_e, 2.0, std::abs(mean_e - 2.0), kTol, ReferenceKind::identity,
                            sw.lap()));
  const auto fine_e = build_grid(Group::sl2z, 2.0 * cfg.grid_Y, 2 * cfg.grid_res);
  const Complex refined_e = inner_product(one, e, fine_e, cfg.threads).value;
  out.push_back(make_report("means", "<E,1>/refined", refined_e, mean_e, std::abs(refined_e - mean_e), kRefineTol,
                            ReferenceKind::cross_method, sw.lap()));

  const auto th = squared_theta_function({cfg.eps});
  const auto grid_t = build_grid(Group::gamma0_4, cfg.grid_Y, cfg.grid_res);
  const Complex mean_t = inner_product(one, th, grid_t, cfg.threads).value;
  out.push_back(make_report("means", "<|theta|^2,1>", mean_t, 1.0, std::abs(mean_t - 1.0), kTol,
                            ReferenceKind::identity, sw.lap()));
  const auto fine_t = build_grid(Group::gamma0_4, 2.0 * cfg.grid_Y, 2 * cfg.grid_res);
  const Complex refined_t = inner_product(one, th, fine_t, cfg.threads).value;
  out.push_back(make_report("means", "<|theta|^2,1>/refined", refined_t, mean_t, std::abs(refined_t - mean_t),
                            kRefineTol, ReferenceKind::cross_method, sw.lap()));
  const Complex total = mean_t * grid_t.volume();
  out.push_back(make_report("means", "integral |theta|^2", total, kTwoPi, std::abs(total - kTwoPi), 2e-2,
                            ReferenceKind::closed_form, sw.lap()));
  return out;
}

std::vector<VerificationReport> suite_theorem1(const HarnessConfig& cfg) {
  cfg.validate();
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  const auto th = squared_theta_function({cfg.eps});
  const auto phi = cfg.phi.function();
  const auto grid = build_grid(Group::gamma0_4, cfg.grid_Y, cfg.grid_res);
  const Complex mean_phi = inner_product(constant_function(1.0), phi, grid, cfg.threads).value;

  // self-adjointness route, checked first at n = 3
  {
    const Complex left = inner_product(hecke_transform(th, 3), phi, grid, cfg.threads).value;
    const Complex right = inner_product(th, hecke_transform(phi, 3), grid, cfg.threads).value;
    out.push_back(make_report("theorem1", "selfadjoint/n=3", left, right, std::abs(left - right), 1e-4,
                              ReferenceKind::cross_method, sw.lap()));
  }

  std::vector<double> log_n, log_r;
  double max_r = 0.0;
  for (const auto n : cfg.theorem1_n) {
    const Complex pairing = inner_product(hecke_transform(th, n), phi, grid, cfg.threads).value;
    const double d = std::abs(pairing - mean_phi);
    const double nd = static_cast<double>(n);
    const double r = d * std::sqrt(nd) / static_cast<double>(divisor_count(n));
    max_r = std::max(max_r, r);
    log_n.push_back(std::log(nd));
    log_r.push_back(std::log(r));
    out.push_back(make_report("theorem1", "R/n=" + std::to_string(n), r, 0.0, r, cfg.c_bound, ReferenceKind::bound,
                              sw.lap()));
  }
  out.push_back(make_report("theorem1", "max_R", max_r, 0.0, max_r, cfg.c_bound, ReferenceKind::bound, sw.lap()));

  double slope = 0.0;
  if (log_n.size() >= 2) {
    const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / static_cast<double>(log_n.size());
    const double my = std::accumulate(log_r.begin(), log_r.end(), 0.0) / static_cast<double>(log_r.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sxy += (log_n[i] - mx) * (log_r[i] - my);
      sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  out.push_back(make_report("theorem1", "loglog_slope", slope, 0.0, std::max(0.0, slope), 0.1, ReferenceKind::bound,
                            sw.lap()));

  // quadrature budget at the largest n: resolution change plus the discarded cusp
  const auto n_max = *std::max_element(cfg.theorem1_n.begin(), cfg.theorem1_n.end());
  const auto coarse = build_grid(Group::gamma0_4, cfg.grid_Y, std::max(8, cfg.grid_res / 2));
  const auto tn = hecke_transform(th, n_max);
  const Complex fine_value = inner_product(tn, phi, grid, cfg.threads).value;
  const Complex coarse_value = inner_product(tn, phi, coarse, cfg.threads).value;
  // T_n|theta|^2 <= (1.2 sqrt(n) + 1) ht^{1/2} high in the cusps, times phi <= ht^{1/2 - delta}
  const double envelope = 1.2 * std::sqrt(static_cast<double>(n_max)) + 1.0;
  const double tail = grid.tail_bound(1.0 - cfg.phi.delta, envelope) / grid.volume();
  const double budget = std::abs(fine_value - coarse_value) + tail;
  out.push_back(make_report("theorem1", "quadrature_budget/n=" + std::to_string(n_max), budget, 0.0, budget,
                            0.1 / std::sqrt(static_cast<double>(n_max)), ReferenceKind::bound, sw.lap()));
  return out;
}

std::vector<VerificationReport> suite_residue(const HarnessConfig& cfg) {
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  const HalfPlanePoint z(0.0, 1.0);
  // real approach along the axis, then a vertical one through the normalized form
  for (const Complex s : {Complex(1.0 + 1e-4, 0.0), Complex(1.0, 1e-4)}) {
    const Complex v = s.imag() == 0.0 ? (s - 1.0) * eisenstein_star(s, z) : eisenstein_star_residue_normalized(s, z);
    out.push_back(make_report("residue", "(s-1)E*_s(i)/" + spectral_id(s), v, 1.0, std::abs(v - 1.0), 1e-3,
                              ReferenceKind::identity, sw.lap()));
  }
  return out;
}

std::vector<VerificationReport> suite_eigenbound(const HarnessConfig& cfg) {
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  for (double t : {0.0, 1.0, 5.0}) {
    double excess = 0.0, worst_ratio = 0.0;
    for (std::uint64_t n = 1; n <= 200; ++n) {
      const double c = std::abs(hecke_eigenvalue_eisenstein(n, {0.5, t}));
      const double bound = static_cast<double>(divisor_count(n)) / std::sqrt(static_cast<double>(n));
      excess = std::max(excess, c - bound);
      worst_ratio = std::max(worst_ratio, c / bound);
    }
    // exact inequality: any positive excess fails
    out.push_back(make_report("eigenbound", fmt("n<=200/t=%g", t), worst_ratio, 1.0, std::max(0.0, excess), 0.0,
                              ReferenceKind::bound, sw.lap()));
  }
  return out;
}

std::vector<VerificationReport> suite_invariants(const HarnessConfig& cfg) {
  std::vector<VerificationReport> out;
  Stopwatch sw(cfg.record_timing);
  auto rng = suite_rng(cfg, 8);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.6, 2.5);

  std::uniform_real_distribution<double> sig(-1.0, 2.0), tt(-20.0, 20.0);
  for (int i = 0; i < 10; ++i) {
    const double a = sig(rng);
    const Complex s(a, tt(rng));
    const Complex l = xi(s), r = xi(1.0 - s);
    out.push_back(make_report("invariants", "xi_functional_equation/" + spectral_id(s), l, r, std::abs(l - r),
                              1e-9 * relative_scale(r), ReferenceKind::identity, sw.lap()));
  }

  // theta(-1/(4z)) = sqrt(-i z / |z|) theta(z) for the y^{1/4}-normalized theta
  const TruncationPolicy pol{cfg.eps};
  for (int i = 0; i < 10; ++i) {
    const double x = ux(rng);
    const HalfPlanePoint z(x, uy(rng));
    const Complex zc = z.value();
    const auto w = HalfPlanePoint::from(-0.25 / zc);
    const Complex l = jacobi_theta(w, pol);
    const Complex r = std::sqrt(Complex(0.0, -1.0) * zc / std::abs(zc)) * jacobi_theta(z, pol);
    out.push_back(make_report("invariants", "theta_functional_equation/" + point_id(z), l, r, std::abs(l - r), 1e-10,
                              ReferenceKind::identity, sw.lap()));
  }

  const std::vector<IntegerMatrix> level4 = {IntegerMatrix(1, 1, 0, 1), IntegerMatrix(1, 0, 4, 1),
                                             IntegerMatrix(1, 0, -4, 1), IntegerMatrix(3, -1, 4, -1),
                                             IntegerMatrix(5, 2, 12, 5)};
  for (const auto& g : level4) {
    const double x = ux(rng);
    const HalfPlanePoint z(x, uy(rng));
    const double l = squared_theta_direct(g.apply(z), pol), r = squared_theta_direct(z, pol);
    char buf[96];
    std::snprintf(buf, sizeof buf, "gamma0_4_invariance/[%lld,%lld,%lld,%lld]/", static_cast<long long>(g.a()),
                  static_cast<long long>(g.b()), static_cast<long long>(g.c()), static_cast<long long>(g.d()));
    out.push_back(make_report("invariants", buf + point_id(z), l, r, std::abs(l - r), 1e-9, ReferenceKind::identity,
                              sw.lap()));
  }

  {
    const auto a = eisenstein_function(2.0);
    const auto b = eisenstein_function({2.5, 1.0});
    const InvariantFunction f(Group::sl2z, [&](const TransportedPoint& p) { return a(p) + 0.5 * b(p); });
    const HalfPlanePoint z(-0.17, 1.3);
    for (const auto& [m, n] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {3, 5}, {4, 9}, {5, 7}}) {
      const Complex l = hecke_apply(hecke_transform(f, m), n, z);
      const Complex r = hecke_apply(f, m * n, z);
      out.push_back(make_report("invariants",
                                "hecke_multiplicativity/m=" + std::to_string(m) + ",n=" + std::to_string(n), l, r,
                                std::abs(l - r), 1e-8, ReferenceKind::identity, sw.lap()));
    }
  }

  for (const Complex s : {Complex(1.2, 0.0), Complex(1.6, 3.0), Complex(2.0, 0.0), Complex(3.0, -5.0)}) {
    for (const HalfPlanePoint z : {HalfPlanePoint(0.0, 1.0), HalfPlanePoint(0.3, 0.9), HalfPlanePoint(-0.45, 2.2)}) {
      const Complex l = eisenstein_direct(s, z, cfg.eps * 10.0).value;
      const Complex r = eisenstein_fourier(s, z, cfg.eps * 10.0).value;
      out.push_back(make_report("invariants", "eisenstein_cross_method/" + spectral_id(s) + "/" + point_id(z), l, r,
                                std::abs(l - r), 1e-8, ReferenceKind::cross_method, sw.lap()));
    }
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"poisson",  "mellin",  "contour",    "means",
                                                 "theorem1", "residue", "eigenbound", "invariants"};
  return names;
}

std::vector<VerificationReport> run_suite(const std::string& name, const HarnessConfig& cfg) {
  cfg.validate();
  if (name == "all") {
    std::vector<VerificationReport> all;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, cfg);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (name == "poisson") return suite_poisson(cfg);
  if (name == "mellin") return suite_mellin(cfg);
  if (name == "contour") return suite_contour(cfg);
  if (name == "means") return suite_means(cfg);
  if (name == "theorem1") return suite_theorem1(cfg);
  if (name == "residue") return suite_residue(cfg);
  if (name == "eigenbound") return suite_eigenbound(cfg);
  if (name == "invariants") return suite_invariants(cfg);
  throw InvalidParameter("unknown suite: " + name);
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  os << "suite,case_id,computed_re,computed_im,reference_re,reference_im,abs_error,tolerance,pass,wall_time_s\n";
  for (const auto& r : reports) {
    os << csv_field(r.suite) << ',' << csv_field(r.case_id) << ',' << fmt17(r.computed.real()) << ','
       << fmt17(r.computed.imag()) << ',' << fmt17(r.reference.real()) << ',' << fmt17(r.reference.imag()) << ','
       << fmt17(r.abs_error) << ',' << fmt17(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
       << fmt17(r.wall_time_s) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<VerificationReport>& reports) {
  auto number = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return fmt17(v);  // JSON has no NaN or infinity
  };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"suite", r.suite},
                   {"case_id", r.case_id},
                   {"computed_re", number(r.computed.real())},
                   {"computed_im", number(r.computed.imag())},
                   {"reference_re", number(r.reference.real())},
                   {"reference_im", number(r.reference.imag())},
                   {"abs_error", number(r.abs_error)},
                   {"tolerance", number(r.tolerance)},
                   {"pass", r.pass},
                   {"wall_time_s", number(r.wall_time_s)},
                   {"reference_kind", to_string(r.reference_kind)}});
  }
  os << arr.dump(2) << '\n';
}

}  // namespace thetaspec
