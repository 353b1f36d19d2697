#ifndef THETASPEC_THETAFORMS_HPP
#define THETASPEC_THETAFORMS_HPP

#include "thetaspec/hyperbolic.hpp"
#include "thetaspec/types.hpp"

namespace thetaspec {

/// Truncation of Gaussian-decay lattice sums.
struct TruncationPolicy {
  double eps = 1e-15;   ///< target absolute error per sum
  bool reduce = false;  ///< move invariant evaluations to a reduced point first

  /// Smallest N with sum_{|n| > N} exp(-rate n^2) < eps (first omitted term with safety factor 3).
  int gaussian_cutoff(double rate) const;
};

/// theta(z) = y^{1/4} sum_n exp(2 pi i n^2 z).
Complex jacobi_theta(HalfPlanePoint z, const TruncationPolicy& pol = {});

/// |theta(z)|^2 as the double sum
///   y^{1/2} sum_{m,n} e((m^2 - n^2) x) exp(-2 pi (m^2 + n^2) y).
/// With pol.reduce the point is first moved by z -> z + 1 and z -> -1/(4z)
/// (both preserve |theta|^2) and, near the cusp 1/2, rewritten through the
/// half-integer sum.
double squared_theta_direct(HalfPlanePoint z, const TruncationPolicy& pol = {});

/// |theta(z)|^2 after Poisson summation in m + n:
///   (1/2) sum_{xi = 0,1} sum_{mu, nu} (-1)^{xi mu} exp(-pi ((mu x + xi/2 + nu)^2 / y + mu^2 y)).
double squared_theta_poisson(HalfPlanePoint z, const TruncationPolicy& pol = {});

/// f(y) = sum_{lambda != 0} exp(-pi lambda^2 / y).
double f_profile(double y, const TruncationPolicy& pol = {});

enum class EIncompleteForm { gaussian_sum, coprime_f_sum };

/// E(z) = sum_{mu, nu} exp(-pi ((mu x + nu)^2 / y + mu^2 y)), or equivalently
/// 1 + sum over coprime (c, d) modulo sign of f(y / |cz + d|^2).
double e_incomplete(HalfPlanePoint z, const TruncationPolicy& pol = {},
                    EIncompleteForm form = EIncompleteForm::gaussian_sum);

/// |theta|^2 at a transported point, evaluated through the cusp expansions of
/// the Gamma0(4) coset representatives so that images of high cusp points are
/// never formed numerically.
double squared_theta(const TransportedPoint& p, const TruncationPolicy& pol = {});

/// Gamma0(4)-invariant |theta|^2.
InvariantFunction squared_theta_function(TruncationPolicy pol = {});
/// SL2(Z)-invariant E(z).
InvariantFunction e_incomplete_function(TruncationPolicy pol = {});

namespace detail {

/// Result of moving z by z -> z + 1 and z -> -1/(4z).
struct ThetaReduction {
  HalfPlanePoint point;
  bool half_cusp;  ///< |theta|^2(z) = y_w^{1/2} |sum_n e((n + 1/2)^2 w)|^2 at w = point
};
ThetaReduction reduce_for_theta(HalfPlanePoint z);

/// y^{1/2} |sum_n e((n + offset)^2 z)|^2 by a single sum (offset 0 or 1/2).
double shifted_theta_square(HalfPlanePoint z, double offset, const TruncationPolicy& pol);

}  // namespace detail

}  // namespace thetaspec

#endif  // THETASPEC_THETAFORMS_HPP
