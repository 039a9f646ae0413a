#include "spinlab/transforms.hpp"
#include "spinlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace spinlab {

std::vector<double> cosine_quadrature(const SphereGrid& grid, std::span<const double> f_samples,
                                      std::span<const Vec3> eval_points) {
  if (f_samples.size() != grid.size()) throw InvalidArgument("cosine_quadrature: sample count does not match grid");
  const double mean = grid.integrate(f_samples);
  const auto nodes = grid.nodes();
  const auto weights = grid.weights();
  std::vector<double> out(eval_points.size());
  parallel_for(eval_points.size(), [&](std::size_t i) {
    std::vector<double> terms(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      terms[j] = weights[j] * std::abs(eval_points[i].dot(nodes[j])) * (f_samples[j] - mean);
    }
    out[i] = pairwise_sum(terms) + 0.5 * mean;
  });
  return out;
}

namespace {

void require_even_coeffs(const HarmonicCoeffs& coeffs, const char* what, bool ill_posed) {
  const auto [odd, degree] = coeffs.odd_max_abs();
  if (odd > kParityTol * coeffs.max_abs()) {
    const std::string msg = std::string(what) + ": input is not even; largest odd coefficient " +
                            std::to_string(odd) + " at degree " + std::to_string(degree);
    if (ill_posed) throw IllPosedInput(msg);
    throw InvalidInput(msg);
  }
}

}  // namespace

HarmonicCoeffs cosine_spectral(const HarmonicCoeffs& coeffs) {
  require_even_coeffs(coeffs, "cosine_spectral", false);
  const int L = coeffs.degree();
  const MultiplierTable lambda = cosine_multipliers(L);
  HarmonicCoeffs out(L);
  for (int k = 0; k <= L; k += 2) {
    for (int m = -k; m <= k; ++m) out(k, m) = lambda[k] * coeffs(k, m);
  }
  return out;
}

GeneratingCoeffs inverse_cosine_spectral(const HarmonicCoeffs& coeffs, double guard_threshold) {
  if (!(guard_threshold > 0.0)) throw InvalidArgument("inverse_cosine_spectral: guard_threshold must be > 0");
  const int L = coeffs.degree();
  if (L > kMaxBandLimit) throw InvalidArgument("inverse_cosine_spectral: band limit exceeds 256");
  require_even_coeffs(coeffs, "inverse_cosine_spectral", true);
  const MultiplierTable lambda = cosine_multipliers(L);
  const double scale = coeffs.max_abs();
  GeneratingCoeffs out{HarmonicCoeffs(L), {}};
  for (int k = 0; k <= L; k += 2) {
    if (std::abs(lambda[k]) > guard_threshold) {
      for (int m = -k; m <= k; ++m) out.coeffs(k, m) = coeffs(k, m) / lambda[k];
      continue;
    }
    for (int m = -k; m <= k; ++m) {
      if (std::abs(coeffs(k, m)) > kParityTol * scale) {
        throw IllPosedInput("inverse_cosine_spectral: nonzero input at suppressed degree " + std::to_string(k));
      }
    }
    out.suppressed_degrees.push_back(k);
  }
  return out;
}

namespace {

std::size_t uniform_orbit_points(const Body& body) {
  if (const auto* b = std::get_if<BandLimited>(&body.model())) {
    return static_cast<std::size_t>(std::max(128, 2 * b->coeffs.degree() + 2));
  }
  if (const auto* s = std::get_if<Sampled>(&body.model())) {
    return static_cast<std::size_t>(std::max(128, 2 * s->fit.degree() + 2));
  }
  return 128;
}

double orbit_average(const Body& body, const OrbitFrame& frame, double t, std::size_t uniform_points,
                     int panel_points) {
  const std::vector<double> kinks = orbit_kinks(body, frame, t);
  const OrbitRule rule = orbit_rule(frame, t, kinks,
                                    kinks.empty() ? uniform_points : static_cast<std::size_t>(panel_points));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) sum += rule.weights[i] * support_value(body, rule.points[i]);
  return sum;
}

}  // namespace

std::vector<double> sample_spin(const Body& body, const Vec3& u, std::span<const double> t_values,
                                int panel_points) {
  require_unit(u, "sample_spin");
  if (panel_points < 1) throw InvalidArgument("sample_spin: panel_points must be >= 1");
  require_even(body, "sample_spin");
  const OrbitFrame frame = orbit_frame(u);
  const std::size_t uniform = uniform_orbit_points(body);
  std::vector<double> out(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    out[i] = orbit_average(body, frame, t_values[i], uniform, panel_points);
  }
  return out;
}

ZonalProfile spin_orbit(const Body& body, const Vec3& u, const SpinOptions& options) {
  require_unit(u, "spin_orbit");
  require_even(body, "spin_orbit");
  if (options.degree < 0 || options.degree > 2 * kMaxBandLimit) {
    throw InvalidArgument("spin_orbit: degree outside [0, 512]");
  }
  if (options.t_nodes < 1) throw InvalidArgument("spin_orbit: t_nodes must be >= 1");
  if (options.panel_points < 1) throw InvalidArgument("spin_orbit: panel_points must be >= 1");

  const OrbitFrame frame = orbit_frame(u);
  const std::size_t uniform = uniform_orbit_points(body);
  const int D = options.degree;

  ZonalProfile profile;
  profile.axis = u;
  profile.kind = ProfileKind::support;
  profile.pole_value = support_value(body, u);

  const QuadratureRule gauss = gauss_legendre_rule(static_cast<std::size_t>(options.t_nodes));
  profile.sample_t = gauss.nodes;
  profile.sample_value.resize(gauss.nodes.size());
  for (std::size_t i = 0; i < gauss.nodes.size(); ++i) {
    profile.sample_value[i] = orbit_average(body, frame, gauss.nodes[i], uniform, options.panel_points);
  }

  const bool smooth_analytic = std::holds_alternative<Ellipsoid>(body.model());
  const QuadratureRule lat = latitude_rule(profile_breakpoints(body, u), smooth_analytic ? D + 64 : D + 2);
  std::vector<double> values(lat.nodes.size());
  parallel_for(lat.nodes.size(), [&](std::size_t i) {
    values[i] = orbit_average(body, frame, lat.nodes[i], uniform, options.panel_points);
  });

  profile.legendre.assign(static_cast<std::size_t>(D + 1), 0.0);
  std::vector<double> p(static_cast<std::size_t>(D + 1));
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    legendre_values(D, lat.nodes[i], p);
    const double wf = lat.weights[i] * values[i];
    for (int k = 0; k <= D; ++k) profile.legendre[static_cast<std::size_t>(k)] += wf * p[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k <= D; ++k) profile.legendre[static_cast<std::size_t>(k)] *= (2.0 * k + 1.0);
  return profile;
}

ZonalProfile spin_spectral(const HarmonicCoeffs& coeffs, const Vec3& u) {
  ZonalProfile profile = project_zonal(coeffs, u);
  profile.kind = ProfileKind::support;
  profile.pole_value = legendre_series(profile.legendre, 1.0);
  return profile;
}

double poisson_kernel(double r, double s) {
  return (1.0 - r * r) / std::pow(1.0 + r * r - 2.0 * r * s, 1.5);
}

namespace {
void require_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("poisson_smooth: r must lie in (0, 1)");
}
}  // namespace

HarmonicCoeffs poisson_smooth(const HarmonicCoeffs& coeffs, double r) {
  require_radius(r);
  HarmonicCoeffs out = coeffs;
  double rk = 1.0;
  for (int k = 0; k <= coeffs.degree(); ++k, rk *= r) {
    for (int m = -k; m <= k; ++m) out(k, m) *= rk;
  }
  return out;
}

ZonalProfile poisson_smooth(const ZonalProfile& profile, double r) {
  require_radius(r);
  ZonalProfile out;
  out.axis = profile.axis;
  out.kind = profile.kind;
  out.legendre = profile.legendre;
  double rk = 1.0;
  for (double& a : out.legendre) {
    a *= rk;
    rk *= r;
  }
  return out;
}

}  // namespace spinlab
