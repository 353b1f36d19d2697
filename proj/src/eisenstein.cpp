#include "thetaspec/eisenstein.hpp"

#include <cmath>

#include "thetaspec/quadrature.hpp"
#include "thetaspec/specfun.hpp"
#include "thetaspec/thetaforms.hpp"

namespace thetaspec {
namespace {

constexpr double kNearHalf = 1e-3;
constexpr double kFourierPoleGuard = 1e-8;

// Gamma(a, x) = x^a int_0^inf exp(-x e^tau + a tau) dtau, x > 0
Complex upper_gamma(Complex a, double x) {
  const double log_x = std::log(x);
  const double reach = std::log((x + 70.0 + 3.0 * std::abs(a)) / x) + 0.5;
  const double width_cap = std::min(0.25, 2.0 / (1.0 + std::abs(a.imag())));
  const int panels = std::max(1, static_cast<int>(std::ceil(reach / width_cap)));
  return integrate_panels([&](double tau) { return std::exp(a * (tau + log_x) - x * std::exp(tau)); }, 0.0, reach,
                          panels);
}

// sum_n n^{s-1/2} sigma_{1-2s}(n) K_{s-1/2}(2 pi n y) cos(2 pi n x), stopped once
// |scale| times a bound on the remaining terms is below eps
Complex kernel_sum(Complex s, HalfPlanePoint z, Complex scale, double eps) {
  const Complex nu = s - 0.5;
  const double order_bound = std::abs(nu.real()) + 1.0;
  const double sigma_excess = std::abs(1.0 - 2.0 * s.real());
  Complex sum = 0.0;
  for (std::uint64_t n = 1;; ++n) {
    const double arg = kTwoPi * static_cast<double>(n) * z.y();
    const double nd = static_cast<double>(n);
    // |K_nu(x)| <= K_{Re nu}(x) <= sqrt(pi/2x) e^{-x} (1 + (Re nu + 1)^2 / x)
    const double k_bound = std::sqrt(kPi / (2.0 * arg)) * std::exp(-arg) * (1.0 + order_bound * order_bound / arg);
    const double coeff_bound = std::pow(nd, std::abs(nu.real()) + sigma_excess + 1.0);
    if (n > 1 && arg > 2.0 && std::abs(scale) * coeff_bound * k_bound * 2.0 < eps) break;
    if (n > 100000) throw DomainError("eisenstein: Fourier series did not converge");
    const double turns = nd * z.x();
    const double phase = std::cos(kTwoPi * (turns - std::round(turns)));
    sum += std::pow(nd, nu) * divisor_sigma(1.0 - 2.0 * s, n) * bessel_k(nu, arg) * phase;
  }
  return sum;
}

// 2 xi(2s) y^s + 2 xi(2s-1) y^{1-s}; near s = 1/2 the poles cancel and the
// value is taken from the Cauchy integral over |s - 1/2| = 0.1
Complex completed_constant_term(Complex s, double y) {
  auto direct = [y](Complex w) {
    return 2.0 * xi(2.0 * w) * std::pow(y, w) + 2.0 * xi(2.0 * w - 1.0) * std::pow(y, 1.0 - w);
  };
  const Complex h = s - 0.5;
  if (std::abs(h) >= kNearHalf) return direct(s);
  constexpr int kNodes = 32;
  constexpr double kRadius = 0.1;
  Complex acc = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const Complex zeta = std::polar(kRadius, kTwoPi * (k + 0.5) / kNodes);
    acc += direct(0.5 + zeta) * zeta / (zeta - h);
  }
  return acc / static_cast<double>(kNodes);
}

}  // namespace

EisensteinEvaluation eisenstein_direct(SpectralPoint sp, HalfPlanePoint z0, double eps) {
  if (!(sp.sigma() > 1.0)) throw DomainError("eisenstein_direct: requires Re s > 1");
  const Complex s = sp;
  const HalfPlanePoint z = reduce_to_fundamental(z0).point;
  const double x = z.x(), y = z.y();

  // pi^{-s} Gamma(s) Z(s) = sum' (pi|w|^2)^{-s} Gamma(s, pi|w|^2/y)
  //   + (1/y) sum' (pi|w|^2/y^2)^{s-1} Gamma(1-s, pi|w|^2/y) + y^{-s}/(s-1) - y^{-s}/s
  const double x_max = std::log(1.0 / eps) + 25.0;
  const double norm_max = x_max * y / kPi;
  Complex lattice = 0.0;
  auto add = [&](double norm) {
    const double arg = kPi * norm / y;
    lattice += std::pow(kPi * norm, -s) * upper_gamma(s, arg) +
               std::pow(kPi * norm / (y * y), s - 1.0) * upper_gamma(1.0 - s, arg) / y;
  };
  for (long d = 1; static_cast<double>(d * d) <= norm_max; ++d) add(static_cast<double>(d * d));
  for (long c = 1; c * c * y * y <= norm_max; ++c) {
    const double reach = std::sqrt(norm_max - static_cast<double>(c * c) * y * y);
    const double center = -static_cast<double>(c) * x;
    for (long d = static_cast<long>(std::floor(center - reach)); d <= static_cast<long>(std::ceil(center + reach));
         ++d) {
      const double re = static_cast<double>(c) * x + static_cast<double>(d);
      const double norm = re * re + static_cast<double>(c * c) * y * y;
      if (norm <= norm_max) add(norm);
    }
  }
  const Complex y_s = std::pow(y, -s);
  const Complex bracket = 2.0 * lattice + y_s / (s - 1.0) - y_s / s;
  const Complex epstein = std::pow(kPi, s) / gamma_complex(sp) * bracket;
  const Complex value = std::pow(y, s) * epstein / (2.0 * zeta_complex(2.0 * s));
  return {sp, z0, value, EisensteinMethod::direct, 1e3 * eps * std::max(1.0, std::abs(value))};
}

Complex eisenstein_star(SpectralPoint sp, HalfPlanePoint z0, double eps) {
  const Complex s = sp;
  const HalfPlanePoint z = reduce_to_fundamental(z0).point;
  const Complex constant = completed_constant_term(s, z.y());
  const Complex scale = 8.0 * std::sqrt(z.y());
  return constant + scale * kernel_sum(s, z, scale, eps);
}

Complex eisenstein_star_residue_normalized(SpectralPoint sp, HalfPlanePoint z0, double eps) {
  const Complex s = sp;
  if (std::abs(s - 1.0) < kPoleTolerance) return 1.0;
  const HalfPlanePoint z = reduce_to_fundamental(z0).point;
  const double y = z.y();
  const Complex scale = 8.0 * std::sqrt(y);
  // (s-1) times each term; (s-1) xi(2s-1) stays finite
  const Complex constant =
      (s - 1.0) * 2.0 * xi(2.0 * s) * std::pow(y, s) + 2.0 * (s - 1.0) * xi(2.0 * s - 1.0) * std::pow(y, 1.0 - s);
  return constant + (s - 1.0) * scale * kernel_sum(s, z, scale, eps);
}

EisensteinEvaluation eisenstein_fourier(SpectralPoint sp, HalfPlanePoint z0, double eps) {
  const Complex s = sp;
  if (std::abs(s - 1.0) < kFourierPoleGuard) {
    throw PoleError("eisenstein_fourier: pole at s = 1; use eisenstein_star_residue_normalized");
  }
  const HalfPlanePoint z = reduce_to_fundamental(z0).point;
  const double y = z.y();
  const Complex inv_xi = xi_reciprocal(2.0 * s);
  Complex value;
  if (std::abs(s - 0.5) < kNearHalf) {
    value = 0.5 * inv_xi * eisenstein_star(sp, z, eps);
  } else {
    const Complex scale = 4.0 * inv_xi * std::sqrt(y);
    value = std::pow(y, s) + xi(2.0 * s - 1.0) * inv_xi * std::pow(y, 1.0 - s) + scale * kernel_sum(s, z, scale, eps);
  }
  return {sp, z0, value, EisensteinMethod::fourier, 10.0 * eps * std::max(1.0, std::abs(value))};
}

InvariantFunction eisenstein_function(SpectralPoint s) {
  return {Group::sl2z, [s](const TransportedPoint& p) { return eisenstein_fourier(s, p.sl2_representative()).value; },
          "E_s"};
}

Complex mellin_f(SpectralPoint sp) {
  if (!(sp.sigma() > 0.5)) throw DomainError("mellin_f: requires Re s > 1/2");
  const Complex s = sp;
  constexpr double kLow = 0.02;
  constexpr double kHigh = 20.0;
  const double a = std::log(kLow), b = std::log(kHigh);
  const double width = std::min(0.2, 1.0 / (1.0 + std::abs(sp.t())));
  const int panels = static_cast<int>(std::ceil((b - a) / width));
  const TruncationPolicy pol{1e-17};
  const Complex body =
      integrate_panels([&](double tau) { return f_profile(std::exp(tau), pol) * std::exp(-s * tau); }, a, b, panels);
  // beyond kHigh, f(y) = sqrt(y) - 1 up to 2 sqrt(y) e^{-pi y}
  const Complex tail = std::pow(kHigh, 0.5 - s) / (s - 0.5) - std::pow(kHigh, -s) / s;
  return body + tail;
}

ContourReconstruction contour_reconstruct(HalfPlanePoint z, double T, int order, int threads) {
  if (!(T > 0.0)) throw InvalidParameter("contour_reconstruct: T must be positive");
  const int panels = static_cast<int>(std::ceil(2.0 * T - 1e-12));
  const double width = 2.0 * T / panels;
  const auto& rule = gauss_legendre(order);
  const auto per_panel = static_cast<std::size_t>(order);
  const Complex integral = parallel_sum<Complex>(
      static_cast<std::size_t>(panels) * per_panel,
      [&](std::size_t i) {
        const std::size_t p = i / per_panel, k = i % per_panel;
        const double mid = -T + (static_cast<double>(p) + 0.5) * width;
        const double t = mid + 0.5 * width * rule.nodes[k];
        return 0.5 * width * rule.weights[k] * eisenstein_star({0.5, t}, z);
      },
      threads, per_panel);
  ContourReconstruction out{};
  out.value = 2.0 + integral.real() / kTwoPi;
  out.imaginary_residue = integral.imag() / kTwoPi;
  out.reference = e_incomplete(z, {1e-16, true});
  out.error = std::abs(out.value - out.reference);
  return out;
}

}  // namespace thetaspec
