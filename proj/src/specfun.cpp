#include "thetaspec/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace thetaspec {
namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

// B_{2k} / (2k)! for k = 1..11; the last entry only feeds the tail bound.
constexpr std::array<double, 11> kBernoulliOverFactorial = [] {
  constexpr std::array<std::array<double, 2>, 11> b = {{{1.0, 6.0},
                                                        {-1.0, 30.0},
                                                        {1.0, 42.0},
                                                        {-1.0, 30.0},
                                                        {5.0, 66.0},
                                                        {-691.0, 2730.0},
                                                        {7.0, 6.0},
                                                        {-3617.0, 510.0},
                                                        {43867.0, 798.0},
                                                        {-174611.0, 330.0},
                                                        {854513.0, 138.0}}};
  std::array<double, 11> out{};
  double factorial = 1.0;
  for (int k = 1; k <= 11; ++k) {
    factorial *= static_cast<double>((2 * k - 1) * (2 * k));
    out[k - 1] = b[k - 1][0] / b[k - 1][1] / factorial;
  }
  return out;
}();

bool near_nonpositive_integer(Complex s) {
  if (std::abs(s.imag()) > kPoleTolerance || s.real() > 0.5) return false;
  return std::abs(s.real() - std::round(s.real())) <= kPoleTolerance;
}

Complex log_gamma_right(Complex s) {
  // Re s >= 1/2
  const Complex z = s - 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

Complex log_gamma(SpectralPoint sp) {
  const Complex s = sp.value();
  if (near_nonpositive_integer(s)) throw PoleError("gamma: pole at non-positive integer");
  if (s.real() >= 0.5) return log_gamma_right(s);
  // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
  return std::log(kPi) - std::log(std::sin(kPi * s)) - log_gamma_right(1.0 - s);
}

Complex gamma_complex(SpectralPoint s) { return std::exp(log_gamma(s)); }

ZetaEvaluation zeta_evaluate(SpectralPoint sp) {
  const Complex s = sp.value();
  if (std::abs(s - 1.0) <= kPoleTolerance) throw PoleError("zeta: pole at s = 1");

  const int n_terms = 10 + static_cast<int>(std::ceil(2.0 * std::abs(s.imag())));
  const double big_n = n_terms;
  Complex sum = 0.0;
  for (int n = n_terms - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));

  const Complex n_pow = std::exp(-s * std::log(big_n));  // N^{-s}
  sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;

  // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  Complex rising = s;  // s(s+1)...(s+2k-2)
  Complex power = n_pow / big_n;
  const double inv_n2 = 1.0 / (big_n * big_n);
  double tail = 0.0;
  for (std::size_t k = 1; k <= kBernoulliOverFactorial.size(); ++k) {
    const Complex term = kBernoulliOverFactorial[k - 1] * rising * power;
    if (k == kBernoulliOverFactorial.size()) {
      tail = std::abs(term);
      break;
    }
    sum += term;
    const double j = static_cast<double>(2 * k - 1);
    rising *= (s + j) * (s + j + 1.0);
    power *= inv_n2;
  }
  return {sum, tail};
}

Complex zeta_complex(SpectralPoint s) { return zeta_evaluate(s).value; }

Complex xi(SpectralPoint sp) {
  const Complex s = sp.value();
  if (std::abs(s) <= kPoleTolerance || std::abs(s - 1.0) <= kPoleTolerance) {
    throw PoleError("xi: pole at s = 0 or s = 1");
  }
  if (s.real() < 0.5) return xi(1.0 - s);
  return std::exp(-0.5 * s * std::log(kPi) + log_gamma(0.5 * s)) * zeta_complex(s);
}

Complex xi_reciprocal(SpectralPoint sp) {
  const Complex s = sp.value();
  if (std::abs(s) <= kPoleTolerance || std::abs(s - 1.0) <= kPoleTolerance) return 0.0;
  return 1.0 / xi(sp);
}

Complex bessel_k(Complex nu, double y, double rel_tol) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("bessel_k: require y > 0");
  const bool real_valued = nu.imag() == 0.0 || nu.real() == 0.0;
  // K_{-nu} = K_nu; work with Im nu >= 0 so the contour lifts upward.
  if (nu.imag() < 0.0 || (nu.imag() == 0.0 && nu.real() < 0.0)) nu = -nu;
  const double sigma = nu.real();
  const double t = nu.imag();

  // Horizontal contour Im w = theta through (or just below) the saddle of
  // -y cosh w + i t w; the cap keeps cos(theta) away from zero.
  double theta = 0.0;
  if (t > 0.0) {
    const double margin = std::min(kPi / 4.0, 3.0 / t);
    const double saddle = t < y ? std::asin(t / y) : kPi / 2.0;
    theta = std::min(saddle, kPi / 2.0 - margin);
  }
  const double decay = y * std::cos(theta);
  const double sin_theta = std::sin(theta);
  const double y_sin = y * sin_theta;

  auto log_magnitude = [&](double u) { return -decay * std::cosh(u) + sigma * u - t * theta; };
  auto integrand = [&](double u) {
    const double re = log_magnitude(u);
    const double im = -y_sin * std::sinh(u) + t * u + sigma * theta;
    return std::exp(re) * Complex(std::cos(im), std::sin(im));
  };

  // peak of |integrand| along the line, then where it falls by e^-46
  const double peak_u = std::asinh(sigma / decay);
  const double floor = log_magnitude(peak_u) - 46.0;
  double upper = peak_u;
  double lower = peak_u;
  for (double step = 0.25; log_magnitude(upper) > floor; upper += step) step *= 1.2;
  for (double step = 0.25; log_magnitude(lower) > floor; lower -= step) step *= 1.2;

  double h = std::min(0.5, 4.0 / (1.0 + t));
  auto offset_sum = [&](double start, double stride) {
    Complex total = 0.0;
    double abs_total = 0.0;
    for (long k = 0;; ++k) {
      const double u = start + static_cast<double>(k) * stride;
      if (u > upper) break;
      const Complex g = integrand(u);
      total += g;
      abs_total += std::abs(g);
    }
    for (long k = 1;; ++k) {
      const double u = start - static_cast<double>(k) * stride;
      if (u < lower) break;
      const Complex g = integrand(u);
      total += g;
      abs_total += std::abs(g);
    }
    return std::pair{total, abs_total};
  };

  auto [raw, raw_abs] = offset_sum(peak_u, h);
  Complex estimate = 0.5 * h * raw;
  double magnitude = 0.5 * h * raw_abs;
  constexpr int kMaxLevels = 14;
  for (int level = 0; level < kMaxLevels; ++level) {
    auto [mid, mid_abs] = offset_sum(peak_u + 0.5 * h, h);
    raw += mid;
    raw_abs += mid_abs;
    h *= 0.5;
    const Complex refined = 0.5 * h * raw;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    magnitude = 0.5 * h * raw_abs;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (level >= 1 && (change <= 0.1 * rel_tol * std::abs(estimate) || change <= roundoff)) break;
  }
  if (real_valued) return {estimate.real(), 0.0};
  return estimate;
}

namespace {

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> factors;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    factors.emplace_back(p, k);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

}  // namespace

Complex divisor_sigma(Complex w, std::uint64_t n) {
  if (n == 0) throw InvalidParameter("divisor_sigma: n must be positive");
  const bool real_exponent = w.imag() == 0.0;
  Complex result = 1.0;
  for (const auto& [p, k] : factorize(n)) {
    Complex local = 1.0;
    Complex power = 1.0;
    const Complex step = real_exponent ? Complex(std::pow(static_cast<double>(p), w.real()), 0.0)
                                       : std::exp(w * std::log(static_cast<double>(p)));
    for (int j = 1; j <= k; ++j) {
      power *= step;
      local += power;
    }
    result *= local;
  }
  return result;
}

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw InvalidParameter("divisor_count: n must be positive");
  std::uint64_t count = 1;
  for (const auto& [p, k] : factorize(n)) count *= static_cast<std::uint64_t>(k + 1);
  return count;
}

std::uint64_t divisor_sum(std::uint64_t n) {
  if (n == 0) throw InvalidParameter("divisor_sum: n must be positive");
  std::uint64_t total = 1;
  for (const auto& [p, k] : factorize(n)) {
    std::uint64_t local = 1;
    std::uint64_t power = 1;
    for (int j = 1; j <= k; ++j) {
      power *= p;
      local += power;
    }
    total *= local;
  }
  return total;
}

}  // namespace thetaspec
