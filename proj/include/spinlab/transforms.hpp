#pragma once

#include "spinlab/bodies.hpp"
#include "spinlab/harmonics.hpp"
#include "spinlab/spheregrid.hpp"
#include "spinlab/zonal.hpp"

#include <span>
#include <vector>

namespace spinlab {

/// Coefficients of a generating distribution, with the degrees where division
/// by a vanishing multiplier was suppressed.
struct GeneratingCoeffs {
  HarmonicCoeffs coeffs;
  std::vector<int> suppressed_degrees;
};

/// (C f)(x) = sum_j w_j |<x, y_j>| f(y_j) over the grid, with the grid mean of
/// f integrated against the kernel exactly (int |<x,y>| dsigma(y) = 1/2), so
/// only the non-constant part of f sees the kernel's kink.
std::vector<double> cosine_quadrature(const SphereGrid& grid, std::span<const double> f_samples,
                                      std::span<const Vec3> eval_points);

/// Diagonal action of the cosine transform: c[k,m] -> lambda_k c[k,m].
HarmonicCoeffs cosine_spectral(const HarmonicCoeffs& coeffs);

/// c[k,m] -> c[k,m] / lambda_k on even degrees with |lambda_k| > guard.
GeneratingCoeffs inverse_cosine_spectral(const HarmonicCoeffs& coeffs, double guard_threshold = 1e-14);

struct SpinOptions {
  int degree = 64;         // Legendre degree of the returned profile
  int t_nodes = 64;        // Gauss nodes at which direct samples are recorded
  int panel_points = 16;   // Gauss points per arc between orbit kinks
};

/// Orbit averages (S_u h)(t) at the given t values.
std::vector<double> sample_spin(const Body& body, const Vec3& u, std::span<const double> t_values,
                                int panel_points = 16);

/// u-spin of the body by orbit quadrature. Direct samples at t_nodes Gauss
/// nodes; Legendre coefficients by a latitude rule refined at the profile's
/// breakpoints; pole value h(u).
ZonalProfile spin_orbit(const Body& body, const Vec3& u, const SpinOptions& options = {});

/// u-spin of a band-limited function: the zonal projection, kind support.
ZonalProfile spin_spectral(const HarmonicCoeffs& coeffs, const Vec3& u);

/// Poisson kernel on S^2 for the probability measure: (1 - r^2) / (1 + r^2 - 2 r s)^{3/2}.
double poisson_kernel(double r, double s);

/// P_r: multiplies degree-k components by r^k.
HarmonicCoeffs poisson_smooth(const HarmonicCoeffs& coeffs, double r);
ZonalProfile poisson_smooth(const ZonalProfile& profile, double r);

}  // namespace spinlab
