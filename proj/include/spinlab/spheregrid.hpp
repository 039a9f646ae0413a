#pragma once

#include "spinlab/common.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace spinlab {

/// Nodes and weights of a 1-D quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; weights sum to 2.
QuadratureRule gauss_legendre_rule(std::size_t n);

/// The same rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre_rule(std::size_t n, double a, double b);

/// Sum in index order by recursive halving. Bit-stable for a given input.
double pairwise_sum(std::span<const double> values);

/// Composite rule for the variable t = cos(theta) on [-1, 1], with weights
/// normalized to sum to 1 (that is, dt/2). Panels are formed in theta between
/// the given breakpoints and refined geometrically toward every interior
/// breakpoint, so integrands with kinks or fractional-power singularities at
/// those points are integrated to near machine precision. `degree` is the
/// polynomial degree in t the rule must resolve away from breakpoints.
QuadratureRule latitude_rule(std::span<const double> t_breakpoints, int degree);

/// One latitude circle of a sphere grid: nodes (sqrt(1-t^2) cos phi,
/// sqrt(1-t^2) sin phi, t) with ring weight times angular weight.
struct Ring {
  double t = 0.0;
  double weight = 0.0;              // latitude weight, sigma-normalized
  std::vector<double> phi;
  std::vector<double> phi_weights;  // sums to 1
};

/// Quadrature on S^2 normalized to the rotation-invariant probability
/// measure. Stored ring by ring; flattened nodes and weights are cached.
class SphereGrid {
 public:
  SphereGrid() = default;
  /// `exact_degree`: total spherical-harmonic degree integrated exactly.
  /// `n_theta` / `n_phi` describe product grids and are 0 otherwise.
  SphereGrid(std::vector<Ring> rings, int exact_degree, int n_theta = 0, int n_phi = 0);

  const std::vector<Ring>& rings() const { return rings_; }
  std::span<const Vec3> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  int exact_degree() const { return exact_degree_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }

  /// Largest L with every product of two degree-<=L harmonics integrated exactly.
  int max_band_limit() const { return exact_degree_ / 2; }

  double integrate(std::span<const double> samples) const;

  template <class F>
  std::vector<double> sample(F&& f) const {
    std::vector<double> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
    return out;
  }

 private:
  std::vector<Ring> rings_;
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
  int exact_degree_ = 0;
  int n_theta_ = 0;
  int n_phi_ = 0;
};

inline constexpr int kDefaultThetaNodes = 96;
inline constexpr int kDefaultPhiNodes = 192;

enum class LatitudeRule {
  gauss,           // n_theta-point Gauss-Legendre in t
  split_equator,   // n_theta/2 points on each of [-1,0] and [0,1]
};

/// Gauss nodes in t times a uniform longitude rule.
SphereGrid product_sphere_grid(int n_theta, int n_phi, LatitudeRule rule = LatitudeRule::gauss);

/// Ring grid whose latitudes come from latitude_rule(t_breakpoints, degree)
/// and whose longitudes are split at phi_breakpoints(t) (angles in the
/// standard frame). Rings without breakpoints use a uniform rule.
SphereGrid adapted_sphere_grid(std::span<const double> t_breakpoints,
                               const std::function<std::vector<double>(double)>& phi_breakpoints,
                               int degree);

/// Quasi-uniform spherical Fibonacci point set. count == 1 gives the pole.
std::vector<Vec3> fibonacci_directions(std::size_t count, bool hemisphere);

/// Probability rule on the circle [0, 2pi).
struct CircleRule {
  std::vector<double> angles;
  std::vector<double> weights;
  std::size_t panels = 0;  // 0 for the uniform rule
};

/// Uniform rule with points_per_panel nodes when there are no breakpoints;
/// otherwise a Gauss rule on every arc between consecutive breakpoints.
CircleRule circle_rule(std::span<const double> breakpoints, std::size_t points_per_panel);

/// Orthonormal frame (axis, e1, e2) used to parametrize orbit circles.
struct OrbitFrame {
  Vec3 axis;
  Vec3 e1;
  Vec3 e2;
};

OrbitFrame orbit_frame(const Vec3& u);

/// Frame of the standard spherical coordinates (axis e3, e1, e2).
OrbitFrame standard_frame();

struct OrbitRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

/// Quadrature for the average over the circle {x : <x,u> = t}.
OrbitRule orbit_rule(const Vec3& u, double t, std::span<const double> breakpoints,
                     std::size_t points_per_panel = 16);

/// Same, with an explicit frame (frame.axis plays the role of u).
OrbitRule orbit_rule(const OrbitFrame& frame, double t, std::span<const double> breakpoints,
                     std::size_t points_per_panel = 16);

/// Angles phi in [0, 2pi) with c + b1 cos(phi) + b2 sin(phi) = 0, where the
/// function changes sign. Empty when there is no transversal crossing.
std::vector<double> circle_crossings(double c, double b1, double b2);

}  // namespace spinlab
