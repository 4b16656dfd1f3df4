#pragma once

#include <complex>

#include <Eigen/Core>

namespace qroof {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat2c = Eigen::Matrix2cd;
using Complex = std::complex<double>;

/// Numerical thresholds shared across modules.
namespace tol {
inline constexpr double pure = 1e-9;        // |x| = 1 test for pure states
inline constexpr double imag = 1e-8;        // imaginary parts of the eta*Q0 spectrum
inline constexpr double psd = 1e-9;         // semidefiniteness / clamping
inline constexpr double degenerate = 1e-9;  // |w_i - w_j| ties in the signature flow
inline constexpr double flat_n0 = 1e-7;     // n0 threshold for a flat kernel direction
inline constexpr double flat_roof = 1e-5;   // equal member values in a decomposition
}  // namespace tol

}  // namespace qroof
