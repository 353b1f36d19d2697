#ifndef THETASPEC_TYPES_HPP
#define THETASPEC_TYPES_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thetaspec {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when an argument sits on (or within tolerance of) a pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for invalid configuration or construction parameters.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Hecke index shares a factor with the level of the function it acts on.
class CoprimalityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complex spectral parameter s = sigma + i t. Components are always finite.
class SpectralPoint {
 public:
  SpectralPoint(double sigma, double t = 0.0) : sigma_(sigma), t_(t) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(sigma) || !std::isfinite(t)) {
      throw InvalidParameter("SpectralPoint: components must be finite");
    }
  }
  SpectralPoint(Complex s) : SpectralPoint(s.real(), s.imag()) {}  // NOLINT(google-explicit-constructor)

  double sigma() const { return sigma_; }
  double t() const { return t_; }
  Complex value() const { return {sigma_, t_}; }
  operator Complex() const { return value(); }  // NOLINT(google-explicit-constructor)

 private:
  double sigma_;
  double t_;
};

/// A point x + i y of the upper half-plane (y > 0).
class HalfPlanePoint {
 public:
  HalfPlanePoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
      throw InvalidParameter("HalfPlanePoint: require finite x and y > 0, got y = " + std::to_string(y));
    }
  }
  static HalfPlanePoint from(Complex z) { return {z.real(), z.imag()}; }

  double x() const { return x_; }
  double y() const { return y_; }
  Complex value() const { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

}  // namespace thetaspec

#endif  // THETASPEC_TYPES_HPP
