#include "thetaspec/hyperbolic.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "thetaspec/quadrature.hpp"

namespace thetaspec {

IntegerMatrix::IntegerMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (det() <= 0) throw InvalidParameter("IntegerMatrix: determinant must be positive");
}

IntegerMatrix IntegerMatrix::unimodular(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (a * d - b * c != 1) throw InvalidParameter("IntegerMatrix::unimodular: determinant must be 1");
  return {a, b, c, d};
}

HalfPlanePoint IntegerMatrix::apply(HalfPlanePoint z) const {
  const double ca = static_cast<double>(a_), cb = static_cast<double>(b_);
  const double cc = static_cast<double>(c_), cd = static_cast<double>(d_);
  const double re_den = cc * z.x() + cd;
  const double im_den = cc * z.y();
  const double norm = re_den * re_den + im_den * im_den;
  const double re_num = ca * z.x() + cb;
  const double x = (re_num * re_den + ca * z.y() * im_den) / norm;
  const double y = static_cast<double>(det()) * z.y() / norm;
  return {x, y};
}

IntegerMatrix IntegerMatrix::inverse() const {
  if (!is_unimodular()) throw InvalidParameter("IntegerMatrix::inverse: requires determinant 1");
  return {d_, -b_, -c_, a_};
}

IntegerMatrix IntegerMatrix::normalized() const {
  if (c_ < 0 || (c_ == 0 && d_ < 0)) return {-a_, -b_, -c_, -d_};
  return *this;
}

IntegerMatrix operator*(const IntegerMatrix& l, const IntegerMatrix& r) {
  return {l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_, l.c_ * r.a_ + l.d_ * r.c_,
          l.c_ * r.b_ + l.d_ * r.d_};
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  return os << "[[" << m.a_ << ", " << m.b_ << "], [" << m.c_ << ", " << m.d_ << "]]";
}

ReducedPoint reduce_to_fundamental(HalfPlanePoint z) {
  constexpr double kCircleTol = 1e-14;
  constexpr std::int64_t kEntryLimit = std::int64_t{1} << 52;
  double x = z.x();
  double y = z.y();
  IntegerMatrix g = IntegerMatrix::identity();
  for (int iter = 0;; ++iter) {
    if (iter > 100000) throw DomainError("reduce_to_fundamental: did not terminate");
    const double shift = std::ceil(x - 0.5);
    if (shift != 0.0) {
      x -= shift;
      g = IntegerMatrix::translation(-static_cast<std::int64_t>(shift)) * g;
    }
    const double r2 = x * x + y * y;
    if (r2 >= 1.0 - kCircleTol) break;
    x = -x / r2;
    y = y / r2;
    g = IntegerMatrix::inversion() * g;
    if (std::abs(g.a()) > kEntryLimit || std::abs(g.b()) > kEntryLimit || std::abs(g.c()) > kEntryLimit ||
        std::abs(g.d()) > kEntryLimit) {
      throw DomainError("reduce_to_fundamental: point too close to the real axis");
    }
  }
  if (std::abs(x * x + y * y - 1.0) <= kCircleTol && x < 0.0) {
    x = -x;
    g = IntegerMatrix::inversion() * g;
  }
  return {HalfPlanePoint(x, y), g.normalized()};
}

double height(HalfPlanePoint z) { return reduce_to_fundamental(z).point.y(); }

bool in_gamma0(const IntegerMatrix& m, std::int64_t level) { return m.c() % level == 0; }

std::array<IntegerMatrix, 6> coset_reps_gamma0_4() {
  // bottom rows (0:1), (1:0), (1:1), (1:2), (1:3), (2:1) of P^1(Z/4)
  return {IntegerMatrix(1, 0, 0, 1),  IntegerMatrix(0, -1, 1, 0), IntegerMatrix(0, -1, 1, 1),
          IntegerMatrix(0, -1, 1, 2), IntegerMatrix(0, -1, 1, 3), IntegerMatrix(1, 0, 2, 1)};
}

bool is_coset_system_gamma0_4(std::span<const IntegerMatrix> reps) {
  if (reps.size() != 6) return false;
  for (const auto& r : reps) {
    if (!r.is_unimodular()) return false;
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (in_gamma0(reps[i] * reps[j].inverse(), 4)) return false;
    }
  }
  return true;
}

int gamma0_4_coset_index(const IntegerMatrix& g) {
  const auto reps = coset_reps_gamma0_4();
  for (int k = 0; k < 6; ++k) {
    if (in_gamma0(g * reps[k].inverse(), 4)) return k;
  }
  throw InvalidParameter("gamma0_4_coset_index: matrix is not in SL2(Z)");
}

namespace {

// returns (g, u, v) with u a + v b = g = gcd(a, b) >= 0
std::array<std::int64_t, 3> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HermiteDecomposition hermite_decompose(const IntegerMatrix& m) {
  const auto [g, u, v] = extended_gcd(m.a(), m.c());
  // left * m is upper triangular
  const IntegerMatrix left(u, v, -m.c() / g, m.a() / g);
  const IntegerMatrix upper = left * m;
  // bring b' into [0, d')
  const std::int64_t k = floor_div(upper.b(), upper.d());
  const IntegerMatrix reduced_upper(upper.a(), upper.b() - k * upper.d(), 0, upper.d());
  const IntegerMatrix modular = left.inverse() * IntegerMatrix::translation(k);
  return {modular, reduced_upper};
}

HalfPlanePoint TransportedPoint::sl2_representative() const {
  if (transform == IntegerMatrix::identity()) return base;
  return hermite_decompose(transform).upper.apply(base);
}

std::int64_t group_level(Group g) { return g == Group::sl2z ? 1 : 4; }
int group_index(Group g) { return g == Group::sl2z ? 1 : 6; }
double group_volume(Group g) { return g == Group::sl2z ? kPi / 3.0 : 2.0 * kPi; }
std::string to_string(Group g) { return g == Group::sl2z ? "SL2(Z)" : "Gamma0(4)"; }

InvariantFunction::InvariantFunction(Group invariance, Kernel kernel, std::string name)
    : invariance_(invariance), kernel_(std::move(kernel)), name_(std::move(name)) {
  if (!kernel_) throw InvalidParameter("InvariantFunction: empty kernel");
}

InvariantFunction constant_function(Complex value) {
  return {Group::sl2z, [value](const TransportedPoint&) { return value; }, "constant"};
}

InvariantFunction height_power(double exponent) {
  return {Group::sl2z,
          [exponent](const TransportedPoint& p) { return Complex(std::pow(height(p.sl2_representative()), exponent)); },
          "ht^" + std::to_string(exponent)};
}

double QuadratureGrid::tail_bound(double exponent, double constant) const {
  if (!(exponent < 1.0)) throw InvalidParameter("tail_bound: growth exponent must be < 1");
  return group_index(group) * constant * std::pow(cusp_cutoff, exponent - 1.0) / (1.0 - exponent);
}

QuadratureGrid build_grid(Group group, double cutoff, int resolution,
                          std::optional<std::span<const IntegerMatrix>> reps) {
  if (!(cutoff >= 2.0)) throw InvalidParameter("build_grid: cusp cutoff Y must be >= 2");
  if (resolution < 8) throw InvalidParameter("build_grid: resolution must be >= 8");

  std::vector<IntegerMatrix> transports;
  if (group == Group::sl2z) {
    transports.push_back(IntegerMatrix::identity());
  } else {
    if (reps) {
      if (!is_coset_system_gamma0_4(*reps)) throw InvalidParameter("build_grid: not a Gamma0(4) coset system");
      transports.assign(reps->begin(), reps->end());
    } else {
      const auto canonical = coset_reps_gamma0_4();
      transports.assign(canonical.begin(), canonical.end());
    }
  }

  const auto& rule = gauss_legendre(resolution);
  std::vector<std::pair<HalfPlanePoint, double>> cell;
  cell.reserve(static_cast<std::size_t>(resolution) * resolution * 64);

  // arc panel: y from sqrt(1 - x^2) to kArcPanelTop
  for (int i = 0; i < resolution; ++i) {
    const double x = 0.5 * rule.nodes[i];
    const double wx = 0.5 * rule.weights[i];
    const double lo = std::sqrt(1.0 - x * x);
    const double half = 0.5 * (kArcPanelTop - lo);
    const double mid = 0.5 * (kArcPanelTop + lo);
    for (int j = 0; j < resolution; ++j) {
      const double y = mid + half * rule.nodes[j];
      cell.emplace_back(HalfPlanePoint(x, y), wx * half * rule.weights[j] / (y * y));
    }
  }
  int panels = 1;
  // geometric panels in log y: dy / y^2 = dtau / y
  for (double lo = kArcPanelTop; lo < cutoff * (1.0 - 1e-15);) {
    const double hi = std::min(lo * std::exp(1.0), cutoff);
    const double tau_lo = std::log(lo), tau_hi = std::log(hi);
    const double half = 0.5 * (tau_hi - tau_lo);
    const double mid = 0.5 * (tau_hi + tau_lo);
    for (int i = 0; i < resolution; ++i) {
      const double x = 0.5 * rule.nodes[i];
      const double wx = 0.5 * rule.weights[i];
      for (int j = 0; j < resolution; ++j) {
        const double y = std::exp(mid + half * rule.nodes[j]);
        cell.emplace_back(HalfPlanePoint(x, y), wx * half * rule.weights[j] / y);
      }
    }
    ++panels;
    lo = hi;
  }

  QuadratureGrid grid;
  grid.group = group;
  grid.cusp_cutoff = cutoff;
  grid.resolution = resolution;
  grid.panel_count = panels;
  grid.nodes.reserve(cell.size() * transports.size());
  for (const auto& g : transports) {
    for (const auto& [z, w] : cell) grid.nodes.push_back({TransportedPoint(g, z), w});
  }
  grid.tail_budget = 2.0 * group_index(group) / std::sqrt(cutoff);
  return grid;
}

InnerProduct inner_product(const InvariantFunction& f, const InvariantFunction& g, const QuadratureGrid& grid,
                           int threads) {
  if (grid.group == Group::sl2z && (f.invariance() != Group::sl2z || g.invariance() != Group::sl2z)) {
    throw InvalidParameter("inner_product: Gamma0(4)-invariant function on an SL2(Z) grid");
  }
  const auto& nodes = grid.nodes;
  const Complex total = parallel_sum<Complex>(
      nodes.size(),
      [&](std::size_t i) { return nodes[i].weight * std::conj(f(nodes[i].point)) * g(nodes[i].point); }, threads);
  const double vol = grid.volume();
  return {total / vol, grid.tail_budget / vol};
}

}  // namespace thetaspec
