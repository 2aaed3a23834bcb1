#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qpe {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

// Structural tolerance for validators (unitarity, hermiticity, norms).
inline constexpr double kStructTol = 1e-10;
// Library gates must match their closed forms to this tolerance.
inline constexpr double kGateTol = 1e-12;

}  // namespace qpe
