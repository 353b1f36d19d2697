#ifndef THETASPEC_SPECFUN_HPP
#define THETASPEC_SPECFUN_HPP

// Special-function kernels in double precision: complex Gamma, Riemann zeta,
// the completed zeta xi(s) = pi^{-s/2} Gamma(s/2) zeta(s), K-Bessel functions
// of complex order and divisor sums.
//
// Accuracy windows (relative error):
//   gamma_complex   1e-13   |s| <= 50, |Im s| <= 50
//   zeta_complex    1e-13   Re s >= -1, |Im s| <= 100
//   xi              1e-12   same window as its factors
//   bessel_k        1e-10   y >= 1e-3, |Re nu| <= 2, |Im nu| <= 60 (default tolerance is tighter)

#include <cstdint>

#include "thetaspec/types.hpp"

namespace thetaspec {

/// Distance below which an argument is treated as sitting on a pole.
inline constexpr double kPoleTolerance = 1e-14;

/// log Gamma(s) on a branch that is continuous away from the negative real axis.
/// Only exp() of the result is meaningful for Re s < 1/2.
Complex log_gamma(SpectralPoint s);

Complex gamma_complex(SpectralPoint s);

struct ZetaEvaluation {
  Complex value;
  double tail_bound;  ///< magnitude of the first omitted Euler-Maclaurin correction
};

/// Riemann zeta by Euler-Maclaurin summation, reporting the truncation bound.
ZetaEvaluation zeta_evaluate(SpectralPoint s);
Complex zeta_complex(SpectralPoint s);

/// Completed zeta; simple poles at s = 0 and s = 1.
Complex xi(SpectralPoint s);

/// 1 / xi(s), extended by zero at the poles s = 0, 1.
Complex xi_reciprocal(SpectralPoint s);

/// Laurent constant of xi at s = 1: xi(s) = 1/(s-1) + kXiLaurentConstant + O(s-1).
inline constexpr double kXiLaurentConstant = 0.5 * (0.57721566490153286061 - 2.5310242469692907930);

/// K_nu(y) for complex order nu and y > 0, via the integral
/// (1/2) int exp(-y cosh w + nu w) dw taken along a horizontal line through
/// the saddle point and summed by the trapezoidal rule with step halving.
Complex bessel_k(Complex nu, double y, double rel_tol = 1e-13);

/// sigma_w(n) = sum over d | n of d^w.
Complex divisor_sigma(Complex w, std::uint64_t n);

/// tau(n), the number of divisors.
std::uint64_t divisor_count(std::uint64_t n);

/// sigma_1(n), the sum of divisors.
std::uint64_t divisor_sum(std::uint64_t n);

}  // namespace thetaspec

#endif  // THETASPEC_SPECFUN_HPP
