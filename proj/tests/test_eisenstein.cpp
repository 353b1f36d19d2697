#include <doctest.h>

#include <random>

#include "thetaspec/eisenstein.hpp"
#include "thetaspec/specfun.hpp"
#include "thetaspec/thetaforms.hpp"

using namespace thetaspec;

TEST_CASE("direct lattice sum") {
  // 2 zeta(2) beta(2) / zeta(4)
  CHECK(std::abs(eisenstein_direct(2.0, {0.0, 1.0}).value - 2.7842015453307912) < 1e-13);
  CHECK(std::abs(eisenstein_direct(2.5, {1.3, 0.8}).value - eisenstein_direct(2.5, {0.3, 0.8}).value) < 1e-10);
  const HalfPlanePoint z(0.2, 1.5);
  const auto inv = IntegerMatrix::inversion().apply(z);
  CHECK(std::abs(eisenstein_direct(2.0, inv).value - eisenstein_direct(2.0, z).value) < 1e-9);
  CHECK(std::abs(eisenstein_direct({1.5, 2.0}, {0.1, 1.2}).value -
                 Complex(1.8074369313259169644, -0.32676446694039217315)) < 1e-12);
  CHECK_THROWS_AS(eisenstein_direct(1.0, z), DomainError);
  CHECK_THROWS_AS(eisenstein_direct({0.7, 3.0}, z), DomainError);
  const auto ev = eisenstein_direct(3.0, z);
  CHECK(ev.method == EisensteinMethod::direct);
  CHECK(ev.error_estimate > 0.0);
}

TEST_CASE("Fourier expansion") {
  CHECK(std::abs(eisenstein_fourier(2.0, {0.0, 1.0}).value - eisenstein_direct(2.0, {0.0, 1.0}).value) < 1e-9);
  const HalfPlanePoint high(0.4, 5.0);
  const Complex constant = 25.0 + xi(3.0) / xi(4.0) / 5.0;
  CHECK(std::abs(eisenstein_fourier(2.0, high).value - constant) < 1e-10);
  CHECK(std::abs(eisenstein_fourier({0.3, 1.0}, {-0.25, 1.05}).value -
                 Complex(1.4670650521133546436, -0.73003822204879875284)) < 1e-12);
  CHECK(std::abs(eisenstein_fourier(0.0, {0.3, 1.7}).value - 1.0) < 1e-14);
  CHECK_THROWS_AS(eisenstein_fourier(1.0, high), PoleError);
  CHECK_THROWS_AS(eisenstein_fourier(1.0 + 1e-9, high), PoleError);
  CHECK(eisenstein_fourier(2.0, high).method == EisensteinMethod::fourier);
}

TEST_CASE("vanishing at s = 1/2") {
  const HalfPlanePoint z(0.1, 1.3);
  CHECK(std::abs(eisenstein_fourier(0.5, z).value) == 0.0);
  const double a = std::abs(eisenstein_fourier(0.5 + 1e-3, z).value);
  const double b = std::abs(eisenstein_fourier(0.5 + 1e-4, z).value);
  CHECK(a > 0.0);
  CHECK(b / a == doctest::Approx(0.1).epsilon(1e-2));
}

TEST_CASE("completed series") {
  CHECK(std::abs(eisenstein_star(0.5, {0.0, 1.0}) - (-3.9002649200019559817)) < 1e-12);
  CHECK(std::abs(eisenstein_star({0.5, 3.0}, {0.2, 1.1}) - (-0.03963446813885055655)) < 1e-13);
  CHECK(std::abs(1e-4 * eisenstein_star(1.0 + 1e-4, {0.0, 1.0}) - 1.0) < 1e-3);
  CHECK_THROWS_AS(eisenstein_star(1.0, {0.0, 1.0}), PoleError);
  CHECK_THROWS_AS(eisenstein_star(0.0, {0.0, 1.0}), PoleError);
  for (double t : {0.5, 2.0, 7.0}) CHECK(std::abs(eisenstein_star({0.5, t}, {0.1, 1.3}).imag()) < 1e-9);
  // the regularized constant term is continuous across the switch radius
  const HalfPlanePoint z(0.3, 1.1);
  CHECK(std::abs(eisenstein_star(0.5 + 0.9999e-3, z) - eisenstein_star(0.5 + 1.0001e-3, z)) < 1e-8);
  CHECK(std::abs(eisenstein_star({0.5, 0.9999e-3}, z) - eisenstein_star({0.5, 1.0001e-3}, z)) < 1e-8);
}

TEST_CASE("residue normalization") {
  const HalfPlanePoint z(0.1, 1.3);
  CHECK(eisenstein_star_residue_normalized(1.0, z) == Complex(1.0));
  double previous = 1.0;
  for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const Complex v = eisenstein_star_residue_normalized({1.0, t}, z);
    const double dev = std::abs(v - 1.0);
    CHECK(dev < previous);
    previous = dev;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("direct and Fourier agree for Re s > 1") {
  double worst = 0.0;
  for (double sigma : {1.2, 1.6, 2.0, 2.5, 3.0}) {
    for (const auto& [x, y, t] : {std::tuple{0.0, 1.0, 0.0}, std::tuple{0.3, 0.9, 1.5}, std::tuple{-0.45, 2.2, -4.0},
                                  std::tuple{0.12, 0.4, 6.5}, std::tuple{1.7, 3.5, -9.0}}) {
      const HalfPlanePoint z(x, y);
      worst = std::max(worst, std::abs(eisenstein_direct({sigma, t}, z).value - eisenstein_fourier({sigma, t}, z).value));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("completed functional equation") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> sig(-0.5, 1.5), tt(-10.0, 10.0), ux(-0.5, 0.5), uy(0.9, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Complex s(sig(rng), tt(rng));
    if (std::abs(s - 1.0) < 0.05 || std::abs(s) < 0.05 || std::abs(s - 0.5) < 2e-3) continue;
    const HalfPlanePoint z(ux(rng), uy(rng));
    const Complex lhs = 2.0 * xi(2.0 * s) * eisenstein_fourier(s, z).value;
    const Complex rhs = 2.0 * xi(2.0 - 2.0 * s) * eisenstein_fourier(1.0 - s, z).value;
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("invariant function wrapper") {
  const auto e2 = eisenstein_function(2.0);
  CHECK(e2.invariance() == Group::sl2z);
  const HalfPlanePoint z(0.2, 1.1);
  CHECK(std::abs(e2(TransportedPoint(IntegerMatrix(1, 0, 3, 1), z)) - eisenstein_direct(2.0, z).value) < 1e-10);
}

TEST_CASE("Mellin transform of f") {
  CHECK(std::abs(mellin_f(2.0) - kPi * kPi / 45.0) < 1e-13);
  CHECK(std::abs(mellin_f(1.5) - 2.0 * xi(3.0)) < 1e-8);
  CHECK(std::abs(mellin_f({1.2, 3.0}) - 2.0 * xi(Complex(2.4, 6.0))) < 1e-7 * std::abs(xi(Complex(2.4, 6.0))));
  double worst = 0.0;
  for (double t = -10.0; t <= 10.0; t += 0.5) {
    const Complex ref = 2.0 * xi(Complex(2.4, 2.0 * t));
    worst = std::max(worst, std::abs(mellin_f({1.2, t}) - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-7);
  CHECK_THROWS_AS(mellin_f(0.5), DomainError);
}

TEST_CASE("contour reconstruction") {
  const auto at_i = contour_reconstruct({0.0, 1.0}, 30.0);
  CHECK(at_i.error < 1e-6);
  CHECK(std::abs(at_i.reference - e_incomplete({0.0, 1.0})) < 1e-14);
  CHECK(std::abs(at_i.imaginary_residue) < 1e-10);
  CHECK(contour_reconstruct({0.25, 2.0}, 30.0, 16, 3).error < 1e-6);

  const HalfPlanePoint z(0.4, 0.9);
  const double e10 = contour_reconstruct(z, 10.0).error;
  const double e20 = contour_reconstruct(z, 20.0).error;
  const double e30 = contour_reconstruct(z, 30.0).error;
  CHECK(e10 > e20);
  CHECK(e20 > e30);
  CHECK(contour_reconstruct(z, 5.0).error > 1e-5);
  CHECK_THROWS_AS(contour_reconstruct(z, 0.0), InvalidParameter);
}

TEST_CASE("contour sum does not depend on the thread count") {
  const HalfPlanePoint z(-0.3, 1.5);
  CHECK(contour_reconstruct(z, 12.0, 16, 1).value == contour_reconstruct(z, 12.0, 16, 5).value);
}
