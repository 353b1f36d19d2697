#include "thetaspec/hecke.hpp"

#include <string>

#include "thetaspec/specfun.hpp"

namespace thetaspec {
namespace {

void require_coprime(const InvariantFunction& f, std::uint64_t n) {
  if (n == 0) throw InvalidParameter("Hecke operator: n must be positive");
  const auto level = static_cast<std::uint64_t>(group_level(f.invariance()));
  if (level > 1 && n % 2 == 0) {
    throw CoprimalityError("Hecke operator T_" + std::to_string(n) + " on a level-" + std::to_string(level) +
                           " function requires odd n");
  }
}

}  // namespace

HeckeCosetSystem::HeckeCosetSystem(std::uint64_t index) : n(index) {
  if (index == 0) throw InvalidParameter("HeckeCosetSystem: n must be positive");
  for (std::uint64_t d = 1; d <= index; ++d) {
    if (index % d != 0) continue;
    const auto a = static_cast<std::int64_t>(index / d);
    for (std::uint64_t b = 0; b < d; ++b) {
      cosets.emplace_back(a, static_cast<std::int64_t>(b), 0, static_cast<std::int64_t>(d));
    }
  }
}

Complex hecke_apply(const InvariantFunction& f, std::uint64_t n, const TransportedPoint& p) {
  require_coprime(f, n);
  if (n == 1) return f(p);
  const HeckeCosetSystem system(n);
  Complex total = 0.0;
  for (const auto& m : system.cosets) total += f(TransportedPoint(m * p.transform, p.base));
  return total / static_cast<double>(system.cosets.size());
}

Complex hecke_apply(const InvariantFunction& f, std::uint64_t n, HalfPlanePoint z) {
  return hecke_apply(f, n, TransportedPoint(z));
}

InvariantFunction hecke_transform(const InvariantFunction& f, std::uint64_t n) {
  require_coprime(f, n);
  return {f.invariance(), [f, n](const TransportedPoint& p) { return hecke_apply(f, n, p); },
          "T_" + std::to_string(n) + "(" + f.name() + ")"};
}

Complex hecke_eigenvalue_eisenstein(std::uint64_t n, SpectralPoint s) {
  if (n == 0) throw InvalidParameter("hecke_eigenvalue_eisenstein: n must be positive");
  if (n == 1) return 1.0;
  const Complex w = s;
  const double nd = static_cast<double>(n);
  return std::pow(nd, w) * divisor_sigma(1.0 - 2.0 * w, n) / static_cast<double>(divisor_sum(n));
}

double hecke_selfadjointness_residual(const InvariantFunction& f, const InvariantFunction& g, std::uint64_t n,
                                      const QuadratureGrid& grid, int threads) {
  const auto left = inner_product(hecke_transform(f, n), g, grid, threads).value;
  const auto right = inner_product(f, hecke_transform(g, n), grid, threads).value;
  return std::abs(left - right);
}

}  // namespace thetaspec
