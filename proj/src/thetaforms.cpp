#include "thetaspec/thetaforms.hpp"

#include <cmath>
#include <numeric>

namespace thetaspec {
namespace {

// e(k x) with the phase reduced modulo 1 before scaling by 2 pi
Complex unit_phase(double turns) {
  const double frac = turns - std::round(turns);
  return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

double gaussian_width(double eps) { return std::log(3.0 / eps); }

}  // namespace

int TruncationPolicy::gaussian_cutoff(double rate) const {
  if (!(eps > 0.0)) throw InvalidParameter("TruncationPolicy: eps must be positive");
  return static_cast<int>(std::ceil(std::sqrt(gaussian_width(eps) / rate))) + 1;
}

Complex jacobi_theta(HalfPlanePoint z, const TruncationPolicy& pol) {
  const double y = z.y();
  const int n_max = pol.gaussian_cutoff(kTwoPi * y);
  Complex sum = 0.0;
  for (int n = n_max; n >= 1; --n) {
    const double n2 = static_cast<double>(n) * n;
    sum += std::exp(-kTwoPi * n2 * y) * unit_phase(n2 * z.x());
  }
  return std::pow(y, 0.25) * (1.0 + 2.0 * sum);
}

namespace detail {

ThetaReduction reduce_for_theta(HalfPlanePoint z) {
  constexpr double kHalfCuspHeight = 0.3;
  double x = z.x();
  double y = z.y();
  for (int iter = 0;; ++iter) {
    if (iter > 100000) throw DomainError("reduce_for_theta: did not terminate");
    x -= std::ceil(x - 0.5);
    const double r2 = x * x + y * y;
    if (r2 >= 0.25) break;
    // z -> -1/(4z)
    x = -x / (4.0 * r2);
    y = y / (4.0 * r2);
  }
  if (y >= kHalfCuspHeight) return {HalfPlanePoint(x, y), false};
  // near +-1/2: move to +1/2, then w = z / (1 - 2z) sends 1/2 to infinity
  if (x < 0.0) x += 1.0;
  const double re = 1.0 - 2.0 * x;
  const double im = -2.0 * y;
  const double norm = re * re + im * im;
  double wx = (x * re + y * im) / norm;
  const double wy = (y * re - x * im) / norm;
  wx -= std::ceil(wx - 0.5);
  return {HalfPlanePoint(wx, wy), true};
}

double shifted_theta_square(HalfPlanePoint z, double offset, const TruncationPolicy& pol) {
  const double y = z.y();
  const int n_max = pol.gaussian_cutoff(kTwoPi * y);
  Complex sum = 0.0;
  if (offset == 0.0) {
    for (int n = n_max; n >= 1; --n) {
      const double n2 = static_cast<double>(n) * n;
      sum += std::exp(-kTwoPi * n2 * y) * unit_phase(n2 * z.x());
    }
    sum = 1.0 + 2.0 * sum;
  } else {
    for (int n = n_max; n >= 0; --n) {
      const double k = n + offset;
      sum += std::exp(-kTwoPi * k * k * y) * unit_phase(k * k * z.x());
    }
    sum *= 2.0;
  }
  return std::sqrt(y) * std::norm(sum);
}

}  // namespace detail

namespace {

double double_sum(HalfPlanePoint z, double offset, const TruncationPolicy& pol) {
  const double x = z.x();
  const double y = z.y();
  const int n_max = pol.gaussian_cutoff(kTwoPi * y);
  const int lo = offset == 0.0 ? -n_max : -n_max - 1;
  double total = 0.0;
  for (int m = lo; m <= n_max; ++m) {
    const double mm = (m + offset) * (m + offset);
    for (int n = lo; n <= n_max; ++n) {
      const double nn = (n + offset) * (n + offset);
      const double turns = (mm - nn) * x;
      total += std::cos(kTwoPi * (turns - std::round(turns))) * std::exp(-kTwoPi * (mm + nn) * y);
    }
  }
  return std::sqrt(y) * total;
}

}  // namespace

double squared_theta_direct(HalfPlanePoint z, const TruncationPolicy& pol) {
  if (!pol.reduce) return double_sum(z, 0.0, pol);
  const auto r = detail::reduce_for_theta(z);
  return double_sum(r.point, r.half_cusp ? 0.5 : 0.0, pol);
}

double squared_theta_poisson(HalfPlanePoint z, const TruncationPolicy& pol) {
  const double x = z.x();
  const double y = z.y();
  const int mu_max = pol.gaussian_cutoff(kPi * y);
  const double width = std::sqrt(gaussian_width(pol.eps) * y / kPi) + 1.0;
  double total = 0.0;
  for (int xi = 0; xi <= 1; ++xi) {
    for (int mu = -mu_max; mu <= mu_max; ++mu) {
      const double shift = mu * x + 0.5 * xi;
      const double row_weight = std::exp(-kPi * mu * mu * y);
      double row = 0.0;
      const auto nu_lo = static_cast<long>(std::floor(-shift - width));
      const auto nu_hi = static_cast<long>(std::ceil(-shift + width));
      for (long nu = nu_lo; nu <= nu_hi; ++nu) {
        const double u = shift + static_cast<double>(nu);
        row += std::exp(-kPi * u * u / y);
      }
      const double sign = (xi == 1 && (mu % 2 != 0)) ? -1.0 : 1.0;
      total += sign * row_weight * row;
    }
  }
  return 0.5 * total;
}

double f_profile(double y, const TruncationPolicy& pol) {
  if (!(y > 0.0)) throw DomainError("f_profile: require y > 0");
  const int n_max = pol.gaussian_cutoff(kPi / y);
  double sum = 0.0;
  for (int n = n_max; n >= 1; --n) sum += std::exp(-kPi * static_cast<double>(n) * n / y);
  return 2.0 * sum;
}

namespace {

double incomplete_gaussian(HalfPlanePoint z, const TruncationPolicy& pol) {
  const double x = z.x();
  const double y = z.y();
  const int mu_max = pol.gaussian_cutoff(kPi * y);
  double total = 0.0;
  for (int mu = -mu_max; mu <= mu_max; ++mu) {
    const double row_weight = std::exp(-kPi * mu * mu * y);
    double row = 0.0;
    if (y <= 1.0) {
      const double shift = mu * x;
      const double width = std::sqrt(gaussian_width(pol.eps) * y / kPi) + 1.0;
      const auto nu_lo = static_cast<long>(std::floor(-shift - width));
      const auto nu_hi = static_cast<long>(std::ceil(-shift + width));
      for (long nu = nu_lo; nu <= nu_hi; ++nu) {
        const double u = shift + static_cast<double>(nu);
        row += std::exp(-kPi * u * u / y);
      }
    } else {
      // sum_nu exp(-pi (nu + mu x)^2 / y) = sqrt(y) sum_k exp(-pi k^2 y) e(k mu x)
      const int k_max = pol.gaussian_cutoff(kPi * y);
      for (int k = k_max; k >= 1; --k) {
        const double turns = k * mu * x;
        row += 2.0 * std::exp(-kPi * k * k * y) * std::cos(kTwoPi * (turns - std::round(turns)));
      }
      row = std::sqrt(y) * (1.0 + row);
    }
    total += row_weight * row;
  }
  return total;
}

double incomplete_coprime(HalfPlanePoint z, const TruncationPolicy& pol) {
  const double x = z.x();
  const double y = z.y();
  // f(u) < eps once pi / u exceeds this
  const double limit = std::log(1e3 / pol.eps);
  const double norm_max = limit * y / kPi;  // bound on |cz + d|^2
  double total = f_profile(y, pol);         // (c, d) = (0, 1)
  const auto c_max = static_cast<long>(std::floor(std::sqrt(norm_max) / y));
  for (long c = 1; c <= c_max; ++c) {
    const double cy2 = static_cast<double>(c) * c * y * y;
    if (cy2 > norm_max) break;
    const double reach = std::sqrt(norm_max - cy2);
    const double center = -static_cast<double>(c) * x;
    const auto d_lo = static_cast<long>(std::floor(center - reach));
    const auto d_hi = static_cast<long>(std::ceil(center + reach));
    for (long d = d_lo; d <= d_hi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double re = static_cast<double>(c) * x + static_cast<double>(d);
      total += f_profile(y / (re * re + cy2), pol);
    }
  }
  return 1.0 + total;
}

double cheap_squared_theta(HalfPlanePoint z, const TruncationPolicy& pol) {
  const auto r = detail::reduce_for_theta(z);
  return detail::shifted_theta_square(r.point, r.half_cusp ? 0.5 : 0.0, pol);
}

}  // namespace

double e_incomplete(HalfPlanePoint z, const TruncationPolicy& pol, EIncompleteForm form) {
  if (pol.reduce) z = reduce_to_fundamental(z).point;
  return form == EIncompleteForm::gaussian_sum ? incomplete_gaussian(z, pol) : incomplete_coprime(z, pol);
}

double squared_theta(const TransportedPoint& p, const TruncationPolicy& pol) {
  if (p.transform == IntegerMatrix::identity()) return cheap_squared_theta(p.base, pol);
  const auto [modular, upper] = hermite_decompose(p.transform);
  const HalfPlanePoint u = upper.apply(p.base);
  const int coset = gamma0_4_coset_index(modular);
  switch (coset) {
    case 0:
      return cheap_squared_theta(u, pol);
    case 1:
    case 2:
    case 3:
    case 4: {
      // |theta|^2(-1/(u + j)) = |theta|^2((u + j)/4)
      const double j = coset - 1;
      return cheap_squared_theta(HalfPlanePoint((u.x() + j) / 4.0, u.y() / 4.0), pol);
    }
    default: {
      // |theta|^2(u / (2u + 1)) = Im(u)^{1/2} |sum_n e((n + 1/2)^2 u)|^2
      const double wx = u.x() - std::ceil(u.x() - 0.5);
      return detail::shifted_theta_square(HalfPlanePoint(wx, u.y()), 0.5, pol);
    }
  }
}

InvariantFunction squared_theta_function(TruncationPolicy pol) {
  return {Group::gamma0_4, [pol](const TransportedPoint& p) { return Complex(squared_theta(p, pol)); }, "|theta|^2"};
}

InvariantFunction e_incomplete_function(TruncationPolicy pol) {
  pol.reduce = true;
  return {Group::sl2z, [pol](const TransportedPoint& p) { return Complex(e_incomplete(p.sl2_representative(), pol)); },
          "E"};
}

}  // namespace thetaspec
