#ifndef THETASPEC_HYPERBOLIC_HPP
#define THETASPEC_HYPERBOLIC_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "thetaspec/types.hpp"

namespace thetaspec {

/// 2x2 integer matrix [[a, b], [c, d]] with positive determinant, acting on H
/// by Moebius transformations. Group elements have determinant 1; Hecke
/// cosets carry determinant n.
class IntegerMatrix {
 public:
  IntegerMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  /// Throws InvalidParameter unless ad - bc = 1.
  static IntegerMatrix unimodular(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static IntegerMatrix identity() { return {1, 0, 0, 1}; }
  static IntegerMatrix translation(std::int64_t k) { return {1, k, 0, 1}; }
  static IntegerMatrix inversion() { return {0, -1, 1, 0}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }
  std::int64_t det() const { return a_ * d_ - b_ * c_; }
  bool is_unimodular() const { return det() == 1; }

  HalfPlanePoint apply(HalfPlanePoint z) const;
  /// Inverse of a determinant-one matrix.
  IntegerMatrix inverse() const;
  /// Same transformation with the sign fixed so that c > 0, or c = 0 and d > 0.
  IntegerMatrix normalized() const;

  friend IntegerMatrix operator*(const IntegerMatrix& l, const IntegerMatrix& r);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

 private:
  std::int64_t a_, b_, c_, d_;
};

struct ReducedPoint {
  HalfPlanePoint point;
  IntegerMatrix transform;  ///< point = transform.apply(original)
};

/// Gauss reduction into {-1/2 < x <= 1/2, |z| >= 1, x >= 0 when |z| = 1}.
ReducedPoint reduce_to_fundamental(HalfPlanePoint z);

/// max over SL2(Z) of Im(gamma z); always >= sqrt(3)/2.
double height(HalfPlanePoint z);

/// True when the lower-left entry is divisible by `level`.
bool in_gamma0(const IntegerMatrix& m, std::int64_t level);

/// Right coset representatives of Gamma0(4) in SL2(Z), identity first.
std::array<IntegerMatrix, 6> coset_reps_gamma0_4();

/// Checks that `reps` are six pairwise Gamma0(4)-inequivalent unimodular matrices.
bool is_coset_system_gamma0_4(std::span<const IntegerMatrix> reps);

/// Index of the canonical representative (from coset_reps_gamma0_4) of Gamma0(4) g.
int gamma0_4_coset_index(const IntegerMatrix& g);

/// A = modular * upper with modular in SL2(Z) and upper = [[a', b'], [0, d']], a', d' > 0.
struct HermiteDecomposition {
  IntegerMatrix modular;
  IntegerMatrix upper;
};
HermiteDecomposition hermite_decompose(const IntegerMatrix& m);

/// The point transform.apply(base), kept symbolic so that functions with known
/// automorphy can evaluate it without forming the image in floating point
/// (the image of a high cusp point lies within rounding distance of a rational).
struct TransportedPoint {
  IntegerMatrix transform = IntegerMatrix::identity();
  HalfPlanePoint base{0.0, 1.0};

  TransportedPoint() = default;
  TransportedPoint(HalfPlanePoint z) : base(z) {}  // NOLINT(google-explicit-constructor)
  TransportedPoint(IntegerMatrix g, HalfPlanePoint z) : transform(g), base(z) {}

  HalfPlanePoint image() const { return transform.apply(base); }
  /// For SL2(Z)-invariant functions: a point in the same orbit as image(),
  /// computed from the upper-triangular Hermite factor.
  HalfPlanePoint sl2_representative() const;
};

enum class Group { sl2z, gamma0_4 };

std::int64_t group_level(Group g);
int group_index(Group g);
/// Hyperbolic volume of Gamma\H: pi/3 or 2 pi.
double group_volume(Group g);
std::string to_string(Group g);

/// A function on H invariant under the given group, evaluated on transported points.
class InvariantFunction {
 public:
  using Kernel = std::function<Complex(const TransportedPoint&)>;

  InvariantFunction(Group invariance, Kernel kernel, std::string name = {});

  Complex operator()(const TransportedPoint& p) const { return kernel_(p); }
  Complex operator()(HalfPlanePoint z) const { return kernel_(TransportedPoint(z)); }
  Group invariance() const { return invariance_; }
  const std::string& name() const { return name_; }

 private:
  Group invariance_;
  Kernel kernel_;
  std::string name_;
};

InvariantFunction constant_function(Complex value);
/// ht(z)^exponent.
InvariantFunction height_power(double exponent);

struct QuadratureNode {
  TransportedPoint point;
  double weight;  ///< includes dx dy / y^2
};

/// Weighted nodes over a fundamental domain truncated at height Y.
struct QuadratureGrid {
  Group group = Group::sl2z;
  double cusp_cutoff = 0.0;
  int resolution = 0;
  int panel_count = 0;  ///< panels per transported cell
  std::vector<QuadratureNode> nodes;
  double tail_budget = 0.0;  ///< bound on the discarded cusp region for integrands <~ ht^{1/2}

  double volume() const { return group_volume(group); }
  /// Bound on the unnormalized cusp contribution of an integrand <= constant * ht^exponent (exponent < 1).
  double tail_bound(double exponent, double constant = 1.0) const;
};

/// Lower edge of the upper panels; the strip y <= kArcPanelTop above the unit
/// circle is one panel.
inline constexpr double kArcPanelTop = 1.2;

/// Tensor Gauss-Legendre grid over {|x| <= 1/2, |z| >= 1, y <= Y}, transported
/// through `reps` (default: coset_reps_gamma0_4()) for Gamma0(4). Above
/// kArcPanelTop the y-panels are geometric with ratio e.
QuadratureGrid build_grid(Group group, double cutoff, int resolution,
                          std::optional<std::span<const IntegerMatrix>> reps = std::nullopt);

struct InnerProduct {
  Complex value;
  double error_estimate;  ///< normalized tail budget
};

/// (1/vol) sum_i w_i conj(F(z_i)) G(z_i).
InnerProduct inner_product(const InvariantFunction& f, const InvariantFunction& g, const QuadratureGrid& grid,
                           int threads = 1);

}  // namespace thetaspec

#endif  // THETASPEC_HYPERBOLIC_HPP
