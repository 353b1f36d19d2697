#ifndef THETASPEC_EISENSTEIN_HPP
#define THETASPEC_EISENSTEIN_HPP

// Real-analytic Eisenstein series for SL2(Z),
//   E_s(z) = (1/2) sum_{gcd(c,d)=1} y^s / |cz + d|^{2s},
// its completion E*_s = 2 xi(2s) E_s, the Mellin transform of f and the
// critical-line reconstruction of E(z).

#include "thetaspec/hyperbolic.hpp"
#include "thetaspec/types.hpp"

namespace thetaspec {

enum class EisensteinMethod { direct, fourier };

struct EisensteinEvaluation {
  SpectralPoint s;
  HalfPlanePoint z;
  Complex value;
  EisensteinMethod method;
  double error_estimate;
};

/// Lattice sum for Re s > 1. The Epstein zeta sum_{(c,d) != 0} |cz + d|^{-2s}
/// is split by the theta-function Mellin identity into two rapidly
/// convergent incomplete-gamma sums over the lattice and its dual; lattice
/// points enter until the Gaussian weight drops below eps.
EisensteinEvaluation eisenstein_direct(SpectralPoint s, HalfPlanePoint z, double eps = 1e-14);

/// Fourier expansion
///   y^s + xi(2s-1)/xi(2s) y^{1-s}
///     + (4/xi(2s)) sqrt(y) sum_{n>=1} n^{s-1/2} sigma_{1-2s}(n) K_{s-1/2}(2 pi n y) cos(2 pi n x),
/// evaluated at the SL2(Z)-reduced point. Vanishes at s = 1/2.
/// Throws PoleError for |s - 1| < 1e-8.
EisensteinEvaluation eisenstein_fourier(SpectralPoint s, HalfPlanePoint z, double eps = 1e-14);

/// E*_s(z) = 2 xi(2s) y^s + 2 xi(2s-1) y^{1-s} + 8 sqrt(y) sum_n (...), finite at
/// s = 1/2 (the constant term is taken from a Cauchy integral when |s - 1/2| < 1e-3).
/// Throws PoleError at s = 0 and s = 1.
Complex eisenstein_star(SpectralPoint s, HalfPlanePoint z, double eps = 1e-14);

/// (s - 1) E*_s(z), continued to the value 1 at s = 1.
Complex eisenstein_star_residue_normalized(SpectralPoint s, HalfPlanePoint z, double eps = 1e-14);

/// z -> E_s(z) as an SL2(Z)-invariant function (Fourier method).
InvariantFunction eisenstein_function(SpectralPoint s);

/// int_0^inf f(y) y^{-s} dy/y for Re s > 1/2: Gauss-Legendre panels in log y
/// on [0.02, 20] plus the exact tail of sqrt(y) - 1 beyond y = 20.
Complex mellin_f(SpectralPoint s);

struct ContourReconstruction {
  double value;              ///< 2 + (1/2 pi) Re int_{-T}^{T} E*_{1/2+it}(z) dt
  double imaginary_residue;  ///< (1/2 pi) Im of the same integral
  double reference;          ///< E(z) by the Gaussian lattice sum
  double error;              ///< |value - reference|
};

/// Critical-line integral by Gauss-Legendre panels of width at most 1.
ContourReconstruction contour_reconstruct(HalfPlanePoint z, double T, int order = 16, int threads = 1);

}  // namespace thetaspec

#endif  // THETASPEC_EISENSTEIN_HPP
