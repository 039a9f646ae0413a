#pragma once

#include "spinlab/common.hpp"
#include "spinlab/harmonics.hpp"
#include "spinlab/spheregrid.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace spinlab {

struct Ball {
  double radius;
};

/// [-h, h]^3; support h * |x|_1.
struct Cube {
  double half_width;
};

/// Cross-polytope conv{+-s e_i}; support s * |x|_inf.
struct Octahedron {
  double scale;
};

/// {y : y^T M^{-1} y <= 1}; support sqrt(x^T M x).
struct Ellipsoid {
  Eigen::Matrix3d matrix;
};

/// Sum of segments [-w_i v_i, w_i v_i]; support sum_i w_i |<x, v_i>|.
struct Zonotope {
  std::vector<Vec3> generators;
  std::vector<double> weights;
};

struct BandLimited {
  HarmonicCoeffs coeffs;
};

/// Support values on a grid, fitted by harmonics at construction.
struct Sampled {
  SphereGrid grid;
  std::vector<double> values;
  HarmonicCoeffs fit;
};

using BodyModel = std::variant<Ball, Cube, Octahedron, Ellipsoid, Zonotope, BandLimited, Sampled>;

/// A centrally symmetric convex body given by its support function on S^2.
/// Immutable; constructors validate model parameters.
class Body {
 public:
  static Body ball(double radius, std::string label = "ball");
  static Body cube(double half_width, std::string label = "cube");
  static Body octahedron(double scale, std::string label = "octahedron");
  static Body ellipsoid(const Eigen::Matrix3d& matrix, std::string label = "ellipsoid");
  static Body zonotope(std::vector<Vec3> generators, std::vector<double> weights,
                       std::string label = "zonotope");
  static Body bandlimited(HarmonicCoeffs coeffs, std::string label = "bandlimited");
  static Body sampled(SphereGrid grid, std::vector<double> values, std::string label = "sampled");

  const BodyModel& model() const { return model_; }
  const std::string& label() const { return label_; }
  std::string type_name() const;

  /// Bodies whose support function is a finite harmonic series.
  bool is_spectral() const;
  /// Bodies with a piecewise-linear support function (kinks along great circles).
  bool is_polyhedral() const;

 private:
  Body(BodyModel model, std::string label) : model_(std::move(model)), label_(std::move(label)) {}
  BodyModel model_;
  std::string label_;
};

/// h_K(x) for unit x.
double support_eval(const Body& body, const Vec3& x);

/// Same without the unit-norm check; x must be on the sphere.
double support_value(const Body& body, const Vec3& x);

/// Unit normals of the planes across which the support function has a kink.
std::vector<Vec3> kink_normals(const Body& body);

/// Angles on the orbit circle {<x, frame.axis> = t} (parametrized in `frame`)
/// where the support function is not smooth. Empty for smooth models.
std::vector<double> orbit_kinks(const Body& body, const OrbitFrame& frame, double t);
std::vector<double> orbit_kinks(const Body& body, const Vec3& u, double t);

/// Values of t in (-1, 1) where the orbit average of h about u, viewed as a
/// function of t, can fail to be smooth: tangencies of the orbit circle with
/// kink planes and passages through vertices of the kink arrangement.
std::vector<double> profile_breakpoints(const Body& body, const Vec3& u);

struct CheckResult {
  bool pass;
  double value;  // max asymmetry / worst violation
};

/// Compares h(x) and h(-x) at every grid node; fails if the largest
/// difference exceeds tol * max h.
CheckResult check_even(const Body& body, const SphereGrid& grid, double tol = kParityTol);

/// Tests H(x + y) <= H(x) + H(y) + tol on random unit pairs, H the
/// 1-homogeneous extension of h.
CheckResult check_sublinear(const Body& body, int trials, double tol, std::uint64_t seed = 1);

/// Harmonic coefficients of h to degree L. Zonotopes use the exact
/// coefficients lambda_k sum_i w_i Y_km(v_i); other analytic bodies go
/// through expand_by_quadrature.
HarmonicCoeffs expand(const Body& body, int L);

/// Grid analysis of an analytic body: a grid adapted to the kinks for
/// polyhedral bodies, an oversampled one for smooth bodies.
HarmonicCoeffs expand_by_quadrature(const Body& body, int L);

/// Throws InvalidInput unless h is even to within kParityTol.
void require_even(const Body& body, const char* what);

}  // namespace spinlab
