#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <numbers>
#include <stdexcept>
#include <string>

namespace spinlab {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Largest band limit accepted anywhere in the pipeline. Inversion of the
// cosine transform amplifies degree k by roughly k^{5/2}.
inline constexpr int kMaxBandLimit = 256;

// Relative size below which odd-degree content counts as quadrature noise.
inline constexpr double kParityTol = 1e-9;

// Slack for "is this a unit vector" checks.
inline constexpr double kUnitTol = 1e-12;

/// A precondition on an argument does not hold (bad size, out-of-range value).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but violates a structural requirement of the
/// operation, e.g. a support function with an odd part.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inversion requested at a degree where the forward map is (numerically) zero.
class IllPosedInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

void require_unit(const Vec3& x, const char* what);

}  // namespace spinlab
