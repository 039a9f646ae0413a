#include "spinlab/bodies.hpp"
#include "spinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spinlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

void require_positive_on_sphere(const HarmonicCoeffs& coeffs, const char* what) {
  const int n = std::max(coeffs.degree() + 1, 16);
  const SphereGrid grid = product_sphere_grid(n, 2 * n);
  const auto values = synthesize(coeffs, grid);
  if (!(*std::min_element(values.begin(), values.end()) > 0.0)) {
    throw InvalidArgument(std::string(what) + ": support values must be strictly positive");
  }
}

const std::vector<Vec3>& octahedron_normals() {
  static const std::vector<Vec3> normals = [] {
    std::vector<Vec3> n;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        for (double sign : {1.0, -1.0}) {
          Vec3 v = Vec3::Zero();
          v[i] = r;
          v[j] = sign * r;
          n.push_back(v);
        }
      }
    }
    return n;
  }();
  return normals;
}

}  // namespace

Body Body::ball(double radius, std::string label) {
  require_positive(radius, "ball radius");
  return Body(Ball{radius}, std::move(label));
}

Body Body::cube(double half_width, std::string label) {
  require_positive(half_width, "cube half_width");
  return Body(Cube{half_width}, std::move(label));
}

Body Body::octahedron(double scale, std::string label) {
  require_positive(scale, "octahedron scale");
  return Body(Octahedron{scale}, std::move(label));
}

Body Body::ellipsoid(const Eigen::Matrix3d& matrix, std::string label) {
  if (!matrix.allFinite() || (matrix - matrix.transpose()).norm() > 1e-12 * matrix.norm()) {
    throw InvalidArgument("ellipsoid matrix must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(matrix);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw InvalidArgument("ellipsoid matrix must be positive definite");
  }
  return Body(Ellipsoid{0.5 * (matrix + matrix.transpose())}, std::move(label));
}

Body Body::zonotope(std::vector<Vec3> generators, std::vector<double> weights, std::string label) {
  if (generators.empty()) throw InvalidArgument("zonotope needs at least one generator");
  if (generators.size() != weights.size()) {
    throw InvalidArgument("zonotope: generators and weights differ in length");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    require_positive(weights[i], "zonotope weight");
    const double n = generators[i].norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("zonotope generator must be nonzero");
    // A segment along v with weight w equals the segment along v/|v| with weight w|v|.
    generators[i] /= n;
    weights[i] *= n;
  }
  return Body(Zonotope{std::move(generators), std::move(weights)}, std::move(label));
}

Body Body::bandlimited(HarmonicCoeffs coeffs, std::string label) {
  if (coeffs.degree() > kMaxBandLimit) throw InvalidArgument("bandlimited body: degree exceeds cap");
  require_positive_on_sphere(coeffs, "bandlimited body");
  return Body(BandLimited{std::move(coeffs)}, std::move(label));
}

Body Body::sampled(SphereGrid grid, std::vector<double> values, std::string label) {
  if (values.size() != grid.size()) throw InvalidArgument("sampled body: value count does not match grid");
  for (double v : values) require_positive(v, "sampled support value");
  const int L = std::min(grid.max_band_limit(), kMaxBandLimit);
  if (L < 0) throw InvalidArgument("sampled body: grid too coarse");
  HarmonicCoeffs fit = analyze(grid, values, L);
  return Body(Sampled{std::move(grid), std::move(values), std::move(fit)}, std::move(label));
}

std::string Body::type_name() const {
  return std::visit(overloaded{
                        [](const Ball&) { return "ball"; },
                        [](const Cube&) { return "cube"; },
                        [](const Octahedron&) { return "octahedron"; },
                        [](const Ellipsoid&) { return "ellipsoid"; },
                        [](const Zonotope&) { return "zonotope"; },
                        [](const BandLimited&) { return "bandlimited"; },
                        [](const Sampled&) { return "sampled"; },
                    },
                    model_);
}

bool Body::is_spectral() const {
  return std::holds_alternative<BandLimited>(model_) || std::holds_alternative<Sampled>(model_);
}

bool Body::is_polyhedral() const {
  return std::holds_alternative<Cube>(model_) || std::holds_alternative<Octahedron>(model_) ||
         std::holds_alternative<Zonotope>(model_);
}

double support_value(const Body& body, const Vec3& x) {
  return std::visit(overloaded{
                        [](const Ball& b) { return b.radius; },
                        [&](const Cube& c) { return c.half_width * x.cwiseAbs().sum(); },
                        [&](const Octahedron& o) { return o.scale * x.cwiseAbs().maxCoeff(); },
                        [&](const Ellipsoid& e) { return std::sqrt(x.dot(e.matrix * x)); },
                        [&](const Zonotope& z) {
                          double h = 0.0;
                          for (std::size_t i = 0; i < z.generators.size(); ++i) {
                            h += z.weights[i] * std::abs(x.dot(z.generators[i]));
                          }
                          return h;
                        },
                        [&](const BandLimited& b) { return synthesize(b.coeffs, x); },
                        [&](const Sampled& s) { return synthesize(s.fit, x); },
                    },
                    body.model());
}

double support_eval(const Body& body, const Vec3& x) {
  require_unit(x, "support_eval");
  return support_value(body, x);
}

std::vector<Vec3> kink_normals(const Body& body) {
  return std::visit(overloaded{
                        [](const Cube&) {
                          return std::vector<Vec3>{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
                        },
                        [](const Octahedron&) { return octahedron_normals(); },
                        [](const Zonotope& z) { return z.generators; },
                        [](const auto&) { return std::vector<Vec3>{}; },
                    },
                    body.model());
}

std::vector<double> orbit_kinks(const Body& body, const OrbitFrame& frame, double t) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw InvalidArgument("orbit_kinks: |t| > 1");
  t = std::clamp(t, -1.0, 1.0);
  std::vector<double> out;
  if (std::abs(t) == 1.0) return out;
  const double s = std::sqrt(1.0 - t * t);
  for (const Vec3& n : kink_normals(body)) {
    const auto phis = circle_crossings(t * frame.axis.dot(n), s * frame.e1.dot(n), s * frame.e2.dot(n));
    out.insert(out.end(), phis.begin(), phis.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> orbit_kinks(const Body& body, const Vec3& u, double t) {
  require_unit(u, "orbit_kinks");
  return orbit_kinks(body, orbit_frame(u), t);
}

std::vector<double> profile_breakpoints(const Body& body, const Vec3& u) {
  std::vector<double> t;
  for (const Vec3& n : kink_normals(body)) {
    const double a = std::clamp(u.dot(n), -1.0, 1.0);
    const double rho = std::sqrt(1.0 - a * a);
    t.push_back(rho);
    t.push_back(-rho);
  }
  if (std::holds_alternative<Octahedron>(body.model())) {
    // Corners of the kink arrangement: the facet normals (+-1,+-1,+-1)/sqrt(3).
    const double r = 1.0 / std::sqrt(3.0);
    for (double sy : {1.0, -1.0}) {
      for (double sz : {1.0, -1.0}) {
        const double a = u.dot(Vec3(r, sy * r, sz * r));
        t.push_back(a);
        t.push_back(-a);
      }
    }
  }
  std::erase_if(t, [](double v) { return !(std::abs(v) < 1.0 - 1e-13); });
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end(), [](double a, double b) { return b - a <= 1e-14; }), t.end());
  return t;
}

CheckResult check_even(const Body& body, const SphereGrid& grid, double tol) {
  double worst = 0.0, hmax = 0.0;
  for (const Vec3& x : grid.nodes()) {
    const double a = support_value(body, x), b = support_value(body, -x);
    worst = std::max(worst, std::abs(a - b));
    hmax = std::max({hmax, std::abs(a), std::abs(b)});
  }
  return {worst <= tol * hmax, worst};
}

CheckResult check_sublinear(const Body& body, int trials, double tol, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("check_sublinear: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_unit = [&] {
    Vec3 v;
    do {
      v = Vec3(gauss(rng), gauss(rng), gauss(rng));
    } while (v.norm() < 1e-8);
    return Vec3(v.normalized());
  };
  auto extended = [&](const Vec3& z) {
    const double n = z.norm();
    return n < 1e-14 ? 0.0 : n * support_value(body, z / n);
  };
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Vec3 x = random_unit(), y = random_unit();
    worst = std::max(worst, extended(x + y) - extended(x) - extended(y));
  }
  return {worst <= tol, worst};
}

HarmonicCoeffs expand(const Body& body, int L) {
  if (L < 0 || L > kMaxBandLimit) throw InvalidArgument("expand: band limit outside [0, 256]");
  if (const auto* b = std::get_if<BandLimited>(&body.model())) return b->coeffs.with_degree(L);
  if (const auto* s = std::get_if<Sampled>(&body.model())) return s->fit.with_degree(L);
  if (const auto* b = std::get_if<Ball>(&body.model())) {
    HarmonicCoeffs c(L);
    c(0, 0) = b->radius;
    return c;
  }
  if (const auto* z = std::get_if<Zonotope>(&body.model())) {
    const MultiplierTable lambda = cosine_multipliers(L);
    const AssociatedLegendreTable table(L);
    HarmonicCoeffs c(L);
    std::vector<double> y(static_cast<std::size_t>((L + 1) * (L + 1)));
    for (std::size_t i = 0; i < z->generators.size(); ++i) {
      sh_values(table, z->generators[i], y);
      for (int k = 0; k <= L; k += 2) {
        for (int m = -k; m <= k; ++m) c(k, m) += z->weights[i] * lambda[k] * y[static_cast<std::size_t>(sh_index(k, m))];
      }
    }
    return c;
  }
  return expand_by_quadrature(body, L);
}

HarmonicCoeffs expand_by_quadrature(const Body& body, int L) {
  if (L < 0 || L > kMaxBandLimit) throw InvalidArgument("expand: band limit outside [0, 256]");
  if (body.is_spectral()) throw InvalidArgument("expand_by_quadrature: body has no analytic support function");
  SphereGrid grid;
  if (body.is_polyhedral()) {
    const OrbitFrame frame = standard_frame();
    grid = adapted_sphere_grid(profile_breakpoints(body, Vec3::UnitZ()),
                               [&](double t) { return orbit_kinks(body, frame, t); }, 2 * L + 2);
  } else {
    // Smooth but not band-limited: oversample.
    grid = adapted_sphere_grid({}, [](double) { return std::vector<double>{}; }, 2 * L + 64);
  }
  const auto nodes = grid.nodes();
  std::vector<double> samples(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { samples[i] = support_value(body, nodes[i]); });
  return analyze(grid, samples, L);
}

void require_even(const Body& body, const char* what) {
  const HarmonicCoeffs* coeffs = nullptr;
  if (const auto* b = std::get_if<BandLimited>(&body.model())) coeffs = &b->coeffs;
  if (const auto* s = std::get_if<Sampled>(&body.model())) coeffs = &s->fit;
  if (coeffs == nullptr) return;
  const auto [odd, degree] = coeffs->odd_max_abs();
  if (odd > kParityTol * coeffs->max_abs()) {
    throw InvalidInput(std::string(what) + ": support function is not even (odd content " +
                       std::to_string(odd) + " at degree " + std::to_string(degree) + ")");
  }
}

}  // namespace spinlab
