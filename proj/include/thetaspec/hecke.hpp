#ifndef THETASPEC_HECKE_HPP
#define THETASPEC_HECKE_HPP

#include <cstdint>
#include <vector>

#include "thetaspec/hyperbolic.hpp"
#include "thetaspec/types.hpp"

namespace thetaspec {

/// The matrices [[a, b], [0, d]] with ad = n and 0 <= b < d; sigma_1(n) of them.
struct HeckeCosetSystem {
  std::uint64_t n = 1;
  std::vector<IntegerMatrix> cosets;

  explicit HeckeCosetSystem(std::uint64_t n);
};

/// T_n F(z) = (1/sigma_1(n)) sum F((az + b)/d). The coset matrices are composed
/// with the transport of p, so cusp points stay exact.
/// Throws CoprimalityError for Gamma0(4)-invariant F and even n.
Complex hecke_apply(const InvariantFunction& f, std::uint64_t n, const TransportedPoint& p);
Complex hecke_apply(const InvariantFunction& f, std::uint64_t n, HalfPlanePoint z);

/// z -> T_n F(z), with the invariance of F.
InvariantFunction hecke_transform(const InvariantFunction& f, std::uint64_t n);

/// Eigenvalue of T_n on E_s: n^s sigma_{1-2s}(n) / sigma_1(n).
Complex hecke_eigenvalue_eisenstein(std::uint64_t n, SpectralPoint s);

/// |<T_n F, G> - <F, T_n G>| on the grid.
double hecke_selfadjointness_residual(const InvariantFunction& f, const InvariantFunction& g, std::uint64_t n,
                                      const QuadratureGrid& grid, int threads = 1);

}  // namespace thetaspec

#endif  // THETASPEC_HECKE_HPP
