#include <doctest.h>

#include <random>
#include <vector>

#include "thetaspec/hyperbolic.hpp"

using namespace thetaspec;

namespace {

// random SL2(Z) element with entries bounded by `bound`, built from words in T and S
IntegerMatrix random_modular(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<int> step(-3, 3);
  for (;;) {
    IntegerMatrix g = IntegerMatrix::identity();
    bool ok = true;
    for (int k = 0; k < 4 && ok; ++k) {
      g = IntegerMatrix::translation(step(rng)) * IntegerMatrix::inversion() * g;
      ok = std::abs(g.a()) <= bound && std::abs(g.b()) <= bound && std::abs(g.c()) <= bound &&
           std::abs(g.d()) <= bound;
    }
    if (ok) return g;
  }
}

HalfPlanePoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.05, 3.0);
  return {ux(rng), uy(rng)};
}

}  // namespace

TEST_CASE("reduction examples") {
  auto r = reduce_to_fundamental({0.0, 1.0});
  CHECK(r.point.x() == 0.0);
  CHECK(r.point.y() == 1.0);
  CHECK(r.transform == IntegerMatrix::identity());

  r = reduce_to_fundamental({5.0, 1.0});
  CHECK(r.point.x() == 0.0);
  CHECK(r.point.y() == 1.0);
  CHECK(r.transform == IntegerMatrix::translation(-5));

  r = reduce_to_fundamental({0.0, 0.5});
  CHECK(r.point.y() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.transform == IntegerMatrix::inversion());
}

TEST_CASE("reduction lands in the fundamental domain and is idempotent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-50.0, 50.0), ly(-6.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const HalfPlanePoint z(ux(rng), std::pow(10.0, ly(rng)));
    const auto r = reduce_to_fundamental(z);
    const double x = r.point.x(), y = r.point.y();
    CHECK(x > -0.5);
    CHECK(x <= 0.5);
    CHECK(x * x + y * y >= 1.0 - 1e-12);
    const HalfPlanePoint mapped = r.transform.apply(z);
    CHECK(std::abs(mapped.y() - y) < 1e-7 * y);
    const auto again = reduce_to_fundamental(r.point);
    CHECK(again.transform == IntegerMatrix::identity());
    CHECK(again.point.x() == x);
    CHECK(again.point.y() == y);
  }
}

TEST_CASE("boundary convention") {
  const auto left = reduce_to_fundamental({-0.5, 2.0});
  CHECK(left.point.x() == 0.5);
  const double c = std::sqrt(0.75);
  const auto arc = reduce_to_fundamental({-0.3, std::sqrt(1.0 - 0.09)});
  CHECK(arc.point.x() > 0.0);
  CHECK(reduce_to_fundamental({0.5, c}).point.x() == doctest::Approx(0.5));
}

TEST_CASE("height examples and invariance") {
  CHECK(height({0.0, 1.0}) == 1.0);
  CHECK(height({0.3, 7.0}) == 7.0);
  CHECK(height({0.0, 0.5}) == doctest::Approx(2.0).epsilon(1e-15));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_modular(rng, 10);
    const auto z = random_point(rng);
    const double h = height(z);
    CHECK(h >= std::sqrt(3.0) / 2.0 - 1e-15);
    CHECK(std::abs(height(g.apply(z)) - h) < 1e-12 * h);
  }
}

TEST_CASE("integer matrices") {
  CHECK_THROWS_AS(IntegerMatrix(1, 2, 3, 4), InvalidParameter);
  CHECK_THROWS_AS(IntegerMatrix::unimodular(2, 0, 0, 1), InvalidParameter);
  const IntegerMatrix h(2, 1, 0, 3);
  CHECK(h.det() == 6);
  CHECK_THROWS_AS(h.inverse(), InvalidParameter);
  const auto g = IntegerMatrix::unimodular(2, 1, 1, 1);
  CHECK(g * g.inverse() == IntegerMatrix::identity());
  const auto w = g.apply({0.1, 0.7});
  const auto back = g.inverse().apply(w);
  CHECK(back.x() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(back.y() == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("Gamma0(4) coset representatives") {
  const auto reps = coset_reps_gamma0_4();
  CHECK(reps.size() == 6);
  CHECK(reps[0] == IntegerMatrix::identity());
  int inequivalent = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    CHECK(reps[i].is_unimodular());
    CHECK(gamma0_4_coset_index(reps[i]) == static_cast<int>(i));
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (!in_gamma0(reps[i] * reps[j].inverse(), 4)) ++inequivalent;
    }
  }
  CHECK(inequivalent == 15);
  CHECK(is_coset_system_gamma0_4(reps));

  std::vector<IntegerMatrix> bad(reps.begin(), reps.end());
  bad[5] = IntegerMatrix(1, 0, 4, 1) * bad[1];
  CHECK_FALSE(is_coset_system_gamma0_4(bad));
}

TEST_CASE("coset index is constant on Gamma0(4) cosets") {
  std::mt19937_64 rng(5);
  const auto reps = coset_reps_gamma0_4();
  const IntegerMatrix gens[] = {IntegerMatrix::translation(1), IntegerMatrix(1, 0, 4, 1), IntegerMatrix(1, 0, -4, 1),
                                IntegerMatrix::translation(-1)};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int k = 0; k < 6; ++k) {
    IntegerMatrix h = IntegerMatrix::identity();
    for (int step = 0; step < 6; ++step) {
      h = gens[pick(rng)] * h;
      CHECK(gamma0_4_coset_index(h * reps[k]) == k);
    }
  }
}

TEST_CASE("Hermite decomposition") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> entry(-20, 20);
  int checked = 0;
  while (checked < 200) {
    const std::int64_t a = entry(rng), b = entry(rng), c = entry(rng), d = entry(rng);
    if (a * d - b * c <= 0 || (a == 0 && c == 0)) continue;
    const IntegerMatrix m(a, b, c, d);
    const auto [g, u] = hermite_decompose(m);
    CHECK(g.is_unimodular());
    CHECK(u.c() == 0);
    CHECK(u.a() > 0);
    CHECK(u.d() > 0);
    CHECK(u.b() >= 0);
    CHECK(u.b() < u.d());
    CHECK(g * u == m);
    ++checked;
  }
}

TEST_CASE("transported points") {
  const IntegerMatrix g(1, 0, 2, 1);
  const TransportedPoint p(g, {0.1, 3.0});
  const auto img = p.image();
  const auto rep = p.sl2_representative();
  CHECK(height(img) == doctest::Approx(height(rep)).epsilon(1e-12));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(build_grid(Group::sl2z, 1.5, 16), InvalidParameter);
  CHECK_THROWS_AS(build_grid(Group::sl2z, 10.0, 4), InvalidParameter);
}

TEST_CASE("grid volumes") {
  const auto sl2 = build_grid(Group::sl2z, 50.0, 64);
  double vol = 0.0;
  for (const auto& n : sl2.nodes) {
    CHECK(n.weight > 0.0);
    vol += n.weight;
  }
  CHECK(std::abs(vol - (kPi / 3.0 - 1.0 / 50.0)) < 1e-12);

  const auto g4 = build_grid(Group::gamma0_4, 50.0, 64);
  double vol4 = 0.0;
  for (const auto& n : g4.nodes) vol4 += n.weight;
  CHECK(std::abs(vol4 - 6.0 * vol) < 1e-11);
  CHECK(g4.nodes.size() == static_cast<std::size_t>(6 * g4.panel_count * 64 * 64));
  CHECK(sl2.nodes.size() == static_cast<std::size_t>(sl2.panel_count * 64 * 64));
}

TEST_CASE("grid nodes lie in the truncated cell") {
  const auto grid = build_grid(Group::sl2z, 20.0, 16);
  for (const auto& n : grid.nodes) {
    const auto z = n.point.base;
    CHECK(std::abs(z.x()) <= 0.5);
    CHECK(z.x() * z.x() + z.y() * z.y() >= 1.0 - 1e-14);
    CHECK(z.y() <= 20.0);
  }
}

TEST_CASE("volume error shrinks as resolution doubles") {
  for (const double cutoff : {10.0, 50.0}) {
    const double exact = kPi / 3.0 - 1.0 / cutoff;
    double previous = std::numeric_limits<double>::infinity();
    for (const int res : {8, 16}) {
      const auto grid = build_grid(Group::sl2z, cutoff, res);
      double vol = 0.0;
      for (const auto& n : grid.nodes) vol += n.weight;
      const double err = std::abs(vol - exact);
      CHECK(err < previous);
      previous = err;
    }
  }
}

TEST_CASE("normalized inner products") {
  const auto one = constant_function(1.0);
  CHECK(std::abs(inner_product(one, one, build_grid(Group::sl2z, 50.0, 32)).value - (1.0 - 3.0 / (50.0 * kPi))) <
        1e-12);
  const auto grid = build_grid(Group::gamma0_4, 50.0, 32);
  const auto ip = inner_product(one, one, grid, 4);
  CHECK(std::abs(ip.value - (1.0 - 3.0 / (50.0 * kPi))) < 1e-12);
  CHECK(ip.error_estimate > 0.0);

  // a second coset system: left-multiply by Gamma0(4) elements
  const auto reps = coset_reps_gamma0_4();
  std::vector<IntegerMatrix> alt;
  const IntegerMatrix h1(1, 0, 4, 1), h2 = IntegerMatrix::translation(3);
  for (std::size_t k = 0; k < reps.size(); ++k) alt.push_back((k % 2 ? h1 : h2) * reps[k]);
  const auto alt_grid = build_grid(Group::gamma0_4, 50.0, 32, std::span<const IntegerMatrix>(alt));
  CHECK(std::abs(inner_product(one, one, alt_grid).value - ip.value) < 1e-13);
}

TEST_CASE("height power pairing converges under cusp refinement") {
  const auto one = constant_function(1.0);
  const double alpha = 0.25;
  const auto phi = height_power(alpha);
  auto with_tail = [&](double cutoff) {
    const auto grid = build_grid(Group::sl2z, cutoff, 24);
    // above the arc panel ht = y, so the discarded part is exact
    const double tail = std::pow(cutoff, alpha - 1.0) / (1.0 - alpha) / grid.volume();
    return inner_product(one, phi, grid).value.real() + tail;
  };
  const double a = with_tail(50.0), b = with_tail(200.0);
  CHECK(std::isfinite(a));
  CHECK(std::abs(a - b) < 1e-3);
}

TEST_CASE("deterministic parallel inner product") {
  const auto grid = build_grid(Group::gamma0_4, 1e6, 16);
  const auto phi = height_power(0.25);
  const auto one = constant_function(1.0);
  const auto a = inner_product(one, phi, grid, 1).value;
  const auto b = inner_product(one, phi, grid, 3).value;
  const auto c = inner_product(one, phi, grid, 8).value;
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("level-4 functions are rejected on SL2(Z) grids") {
  const InvariantFunction level4(Group::gamma0_4, [](const TransportedPoint&) { return Complex(1.0); });
  const auto grid = build_grid(Group::sl2z, 10.0, 8);
  CHECK_THROWS_AS(inner_product(level4, constant_function(1.0), grid), InvalidParameter);
}
