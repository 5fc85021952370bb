#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace laxjac {

using cplx = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Vec2c = Eigen::Vector2cd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

/// Real coordinates (Re z1, Im z1, Re z2, Im z2) of a point of C^2.
inline Eigen::Vector4d to_real4(const Vec2c& z) {
  return {z(0).real(), z(0).imag(), z(1).real(), z(1).imag()};
}

inline Vec2c from_real4(const Eigen::Vector4d& r) {
  return {cplx(r(0), r(1)), cplx(r(2), r(3))};
}

}  // namespace laxjac
