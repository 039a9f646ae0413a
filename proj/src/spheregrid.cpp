#include "spinlab/spheregrid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace spinlab {

namespace {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence, n >= 1.
std::pair<double, double> legendre_pair(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

QuadratureRule gauss_legendre_rule(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_legendre_rule: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, pnm1] = legendre_pair(n, x);
      const double dp = dn * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const auto [pn, pnm1] = legendre_pair(n, x);
    const double dp = dn * (x * pn - pnm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre_rule(std::size_t n, double a, double b) {
  QuadratureRule rule = gauss_legendre_rule(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Geometric refinement toward singular panel ends.
constexpr double kGradingRatio = 0.15;
constexpr int kGradingLevels = 12;
constexpr int kBaseNodes = 12;
constexpr int kGradedNodes = 10;

std::size_t nodes_for(int degree, double angular_length, int base) {
  return static_cast<std::size_t>(std::ceil(degree * angular_length / 4.0)) + base;
}

void append_theta_panel(double a, double b, int degree, int base, QuadratureRule& out, std::size_t extra = 0) {
  if (b <= a) return;
  const QuadratureRule g = gauss_legendre_rule(nodes_for(degree, b - a, base) + extra, a, b);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out.nodes.push_back(std::cos(g.nodes[i]));
    out.weights.push_back(0.5 * g.weights[i] * std::sin(g.nodes[i]));
  }
}

// Panel [a, b] refined toward `a` (toward_left) or toward `b`.
void append_graded_panel(double a, double b, bool toward_left, int degree, QuadratureRule& out) {
  const double len = b - a;
  std::vector<double> cuts{0.0};
  double scale = kGradingRatio;
  for (int j = 0; j < kGradingLevels; ++j) {
    cuts.push_back(scale);
    scale *= kGradingRatio;
  }
  // cuts are distances from the singular end, increasing: 0, s^J ... s
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(1.0);
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double d0 = cuts[j] * len, d1 = cuts[j + 1] * len;
    const int base = (j + 2 == cuts.size()) ? kBaseNodes : kGradedNodes;
    // Ring Fourier modes of order m swing through a phase of about
    // m * acos(1 - d) ~ m * sqrt(d) next to a tangency, independent of len.
    const auto extra = static_cast<std::size_t>(
        std::ceil(degree * kPi / 8.0 * (std::sqrt(cuts[j + 1]) - std::sqrt(cuts[j]))));
    if (toward_left) {
      append_theta_panel(a + d0, a + d1, degree, base, out, extra);
    } else {
      append_theta_panel(b - d1, b - d0, degree, base, out, extra);
    }
  }
}

}  // namespace

QuadratureRule latitude_rule(std::span<const double> t_breakpoints, int degree) {
  std::vector<double> theta{0.0, kPi};
  for (double t : t_breakpoints) {
    if (std::abs(t) < 1.0 - 1e-13) theta.push_back(std::acos(t));
  }
  std::sort(theta.begin(), theta.end());
  theta.erase(std::unique(theta.begin(), theta.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-14; }),
              theta.end());
  if (theta.size() == 2) {
    // No kinks: Gauss in t is exact for polynomials of the requested degree.
    QuadratureRule rule = gauss_legendre_rule(static_cast<std::size_t>(degree / 2 + kBaseNodes));
    for (double& w : rule.weights) w *= 0.5;
    return rule;
  }
  QuadratureRule rule;
  for (std::size_t p = 0; p + 1 < theta.size(); ++p) {
    const double a = theta[p], b = theta[p + 1];
    const bool singular_a = p > 0;
    const bool singular_b = p + 2 < theta.size();
    if (singular_a && singular_b) {
      const double mid = 0.5 * (a + b);
      append_graded_panel(a, mid, true, degree, rule);
      append_graded_panel(mid, b, false, degree, rule);
    } else if (singular_a) {
      append_graded_panel(a, b, true, degree, rule);
    } else if (singular_b) {
      append_graded_panel(a, b, false, degree, rule);
    } else {
      append_theta_panel(a, b, degree, kBaseNodes, rule);
    }
  }
  return rule;
}

SphereGrid::SphereGrid(std::vector<Ring> rings, int exact_degree, int n_theta, int n_phi)
    : rings_(std::move(rings)), exact_degree_(exact_degree), n_theta_(n_theta), n_phi_(n_phi) {
  for (const Ring& ring : rings_) {
    const double s = std::sqrt(std::max(0.0, 1.0 - ring.t * ring.t));
    for (std::size_t j = 0; j < ring.phi.size(); ++j) {
      nodes_.emplace_back(s * std::cos(ring.phi[j]), s * std::sin(ring.phi[j]), ring.t);
      weights_.push_back(ring.weight * ring.phi_weights[j]);
    }
  }
}

double SphereGrid::integrate(std::span<const double> samples) const {
  if (samples.size() != weights_.size()) {
    throw InvalidArgument("SphereGrid::integrate: sample count does not match grid");
  }
  std::vector<double> terms(samples.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = weights_[i] * samples[i];
  return pairwise_sum(terms);
}

SphereGrid product_sphere_grid(int n_theta, int n_phi, LatitudeRule rule) {
  if (n_theta < 1) throw InvalidArgument("product_sphere_grid: n_theta must be >= 1");
  if (n_phi < 2) throw InvalidArgument("product_sphere_grid: n_phi must be >= 2");
  QuadratureRule lat;
  int exact_t = 2 * n_theta - 1;
  if (rule == LatitudeRule::split_equator) {
    if (n_theta % 2 != 0) throw InvalidArgument("product_sphere_grid: split rule needs even n_theta");
    const auto lo = gauss_legendre_rule(static_cast<std::size_t>(n_theta / 2), -1.0, 0.0);
    const auto hi = gauss_legendre_rule(static_cast<std::size_t>(n_theta / 2), 0.0, 1.0);
    lat.nodes = lo.nodes;
    lat.weights = lo.weights;
    lat.nodes.insert(lat.nodes.end(), hi.nodes.begin(), hi.nodes.end());
    lat.weights.insert(lat.weights.end(), hi.weights.begin(), hi.weights.end());
    exact_t = n_theta - 1;
  } else {
    lat = gauss_legendre_rule(static_cast<std::size_t>(n_theta));
  }
  std::vector<double> phi(static_cast<std::size_t>(n_phi));
  std::vector<double> phi_w(static_cast<std::size_t>(n_phi), 1.0 / n_phi);
  for (int j = 0; j < n_phi; ++j) phi[static_cast<std::size_t>(j)] = kTwoPi * j / n_phi;
  std::vector<Ring> rings;
  rings.reserve(lat.nodes.size());
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    rings.push_back(Ring{lat.nodes[i], 0.5 * lat.weights[i], phi, phi_w});
  }
  return SphereGrid(std::move(rings), std::min(exact_t, n_phi - 1), n_theta, n_phi);
}

namespace {

std::vector<double> normalized_breakpoints(std::span<const double> breakpoints) {
  std::vector<double> b;
  b.reserve(breakpoints.size());
  for (double x : breakpoints) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0) y += kTwoPi;
    if (y >= kTwoPi) y = 0.0;
    b.push_back(y);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double x, double y) { return y - x <= 1e-13; }),
          b.end());
  if (b.size() > 1 && b.front() + kTwoPi - b.back() <= 1e-13) b.pop_back();
  return b;
}

}  // namespace

CircleRule circle_rule(std::span<const double> breakpoints, std::size_t points_per_panel) {
  if (points_per_panel == 0) throw InvalidArgument("circle_rule: points_per_panel must be >= 1");
  CircleRule rule;
  const std::vector<double> b = normalized_breakpoints(breakpoints);
  if (b.empty()) {
    rule.angles.resize(points_per_panel);
    rule.weights.assign(points_per_panel, 1.0 / static_cast<double>(points_per_panel));
    for (std::size_t j = 0; j < points_per_panel; ++j) {
      rule.angles[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(points_per_panel);
    }
    return rule;
  }
  const QuadratureRule g = gauss_legendre_rule(points_per_panel);
  rule.panels = b.size();
  for (std::size_t p = 0; p < b.size(); ++p) {
    const double a = b[p];
    const double e = (p + 1 < b.size()) ? b[p + 1] : b.front() + kTwoPi;
    const double half = 0.5 * (e - a);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      double phi = a + half * (1.0 + g.nodes[i]);
      if (phi >= kTwoPi) phi -= kTwoPi;
      rule.angles.push_back(phi);
      rule.weights.push_back(g.weights[i] * half / kTwoPi);
    }
  }
  return rule;
}

SphereGrid adapted_sphere_grid(std::span<const double> t_breakpoints,
                               const std::function<std::vector<double>(double)>& phi_breakpoints,
                               int degree) {
  const QuadratureRule lat = latitude_rule(t_breakpoints, degree);
  std::vector<Ring> rings;
  rings.reserve(lat.nodes.size());
  const std::size_t uniform = static_cast<std::size_t>(degree) + 1;
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    Ring ring;
    ring.t = lat.nodes[i];
    ring.weight = lat.weights[i];
    const std::vector<double> b = normalized_breakpoints(phi_breakpoints(ring.t));
    if (b.empty()) {
      CircleRule c = circle_rule({}, uniform);
      ring.phi = std::move(c.angles);
      ring.phi_weights = std::move(c.weights);
    } else {
      for (std::size_t p = 0; p < b.size(); ++p) {
        const double a = b[p];
        const double e = (p + 1 < b.size()) ? b[p + 1] : b.front() + kTwoPi;
        const QuadratureRule g = gauss_legendre_rule(nodes_for(degree, e - a, kBaseNodes), a, e);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          ring.phi.push_back(g.nodes[j] >= kTwoPi ? g.nodes[j] - kTwoPi : g.nodes[j]);
          ring.phi_weights.push_back(g.weights[j] / kTwoPi);
        }
      }
    }
    rings.push_back(std::move(ring));
  }
  return SphereGrid(std::move(rings), degree);
}

std::vector<Vec3> fibonacci_directions(std::size_t count, bool hemisphere) {
  if (count == 0) throw InvalidArgument("fibonacci_directions: count must be >= 1");
  if (count == 1) return {Vec3(0.0, 0.0, 1.0)};
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> out;
  out.reserve(count);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double di = static_cast<double>(i);
    const double z = hemisphere ? 1.0 - (di + 0.5) / n : 1.0 - (2.0 * di + 1.0) / n;
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = std::fmod(golden_angle * di, kTwoPi);
    out.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
  }
  return out;
}

OrbitFrame orbit_frame(const Vec3& u) {
  const Vec3 a = (std::abs(u.z()) < 0.9) ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 e1 = a.cross(u).normalized();
  const Vec3 e2 = u.cross(e1);
  return {u, e1, e2};
}

OrbitFrame standard_frame() { return {Vec3::UnitZ(), Vec3::UnitX(), Vec3::UnitY()}; }

OrbitRule orbit_rule(const Vec3& u, double t, std::span<const double> breakpoints,
                     std::size_t points_per_panel) {
  require_unit(u, "orbit_rule");
  return orbit_rule(orbit_frame(u), t, breakpoints, points_per_panel);
}

OrbitRule orbit_rule(const OrbitFrame& frame, double t, std::span<const double> breakpoints,
                     std::size_t points_per_panel) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw InvalidArgument("orbit_rule: |t| > 1");
  t = std::clamp(t, -1.0, 1.0);
  OrbitRule rule;
  if (std::abs(t) == 1.0) {
    rule.points.push_back(t * frame.axis);
    rule.weights.push_back(1.0);
    return rule;
  }
  const double s = std::sqrt(1.0 - t * t);
  const CircleRule c = circle_rule(breakpoints, points_per_panel);
  rule.points.reserve(c.angles.size());
  for (double phi : c.angles) {
    rule.points.push_back(t * frame.axis + s * (std::cos(phi) * frame.e1 + std::sin(phi) * frame.e2));
  }
  rule.weights = c.weights;
  return rule;
}

std::vector<double> circle_crossings(double c, double b1, double b2) {
  const double rho = std::hypot(b1, b2);
  if (!(std::abs(c) < rho)) return {};
  const double psi = std::atan2(b2, b1);
  const double delta = std::acos(-c / rho);
  std::vector<double> out;
  for (double phi : {psi + delta, psi - delta}) {
    double y = std::fmod(phi, kTwoPi);
    if (y < 0) y += kTwoPi;
    if (y >= kTwoPi) y -= kTwoPi;
    out.push_back(y);
  }
  return out;
}

}  // namespace spinlab
