#include "spinlab/spheregrid.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinlab;

TEST_CASE("gauss_legendre_rule small cases") {
  const auto g1 = gauss_legendre_rule(1);
  REQUIRE(g1.nodes.size() == 1);
  CHECK(g1.nodes[0] == doctest::Approx(0.0));
  CHECK(g1.weights[0] == doctest::Approx(2.0));

  const auto g2 = gauss_legendre_rule(2);
  CHECK(std::abs(g2.nodes[0] + 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(g2.nodes[1] - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(g2.weights[0] - 1.0) < 1e-15);
  CHECK(std::abs(g2.weights[1] - 1.0) < 1e-15);

  CHECK_THROWS_AS(gauss_legendre_rule(0), InvalidArgument);
}

TEST_CASE("gauss_legendre_rule integrates monomials") {
  const auto g = gauss_legendre_rule(16);
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s += g.weights[i] * std::pow(g.nodes[i], 10);
    w += g.weights[i];
  }
  CHECK(std::abs(s - 2.0 / 11.0) < 1e-14);
  for (std::size_t n : {1u, 7u, 64u, 300u}) {
    const auto r = gauss_legendre_rule(n);
    double total = 0.0;
    for (double x : r.weights) total += x;
    CHECK(std::abs(total - 2.0) < 1e-13);
  }
}

TEST_CASE("product grid basics") {
  const SphereGrid grid = product_sphere_grid(kDefaultThetaNodes, kDefaultPhiNodes);
  double total = 0.0, worst_norm = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.weights()[i] >= 0.0);
    total += grid.weights()[i];
    worst_norm = std::max(worst_norm, std::abs(grid.nodes()[i].norm() - 1.0));
  }
  CHECK(std::abs(total - 1.0) < 1e-13);
  CHECK(worst_norm < 1e-14);
  CHECK(std::abs(grid.integrate(grid.sample([](const Vec3&) { return 1.0; })) - 1.0) < 1e-13);

  CHECK_THROWS_AS(product_sphere_grid(0, 8), InvalidArgument);
  CHECK_THROWS_AS(product_sphere_grid(4, 1), InvalidArgument);
}

TEST_CASE("product grid integrals") {
  const SphereGrid g = product_sphere_grid(64, 128);
  CHECK(std::abs(g.integrate(g.sample([](const Vec3& x) { return x.z() * x.z(); })) - 1.0 / 3.0) < 1e-13);

  const SphereGrid split = product_sphere_grid(64, 128, LatitudeRule::split_equator);
  CHECK(std::abs(split.integrate(split.sample([](const Vec3& x) { return std::abs(x.z()); })) - 0.5) < 1e-13);
}

TEST_CASE("grid integration is rotation invariant for low-degree polynomials") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  const SphereGrid grid = product_sphere_grid(kDefaultThetaNodes, kDefaultPhiNodes);
  for (int trial = 0; trial < 10; ++trial) {
    // Random polynomial of degree <= 8 in the coordinates.
    std::vector<std::array<int, 3>> powers;
    std::vector<double> coef;
    for (int a = 0; a <= 8; ++a) {
      for (int b = 0; a + b <= 8; ++b) {
        for (int c = 0; a + b + c <= 8; ++c) {
          powers.push_back({a, b, c});
          coef.push_back(n(rng));
        }
      }
    }
    auto p = [&](const Vec3& x) {
      double s = 0.0;
      for (std::size_t i = 0; i < powers.size(); ++i) {
        s += coef[i] * std::pow(x.x(), powers[i][0]) * std::pow(x.y(), powers[i][1]) * std::pow(x.z(), powers[i][2]);
      }
      return s;
    };
    const double base = grid.integrate(grid.sample(p));
    const Eigen::Matrix3d R = testing::random_rotation(rng);
    const double rotated = grid.integrate(grid.sample([&](const Vec3& x) { return p(R * x); }));
    CHECK(std::abs(rotated - base) < 1e-10);
  }
}

TEST_CASE("latitude rule with breakpoints") {
  const double breaks[] = {0.3, -0.6, 0.6};
  const QuadratureRule r = latitude_rule(breaks, 40);
  double total = 0.0, kinked = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    total += r.weights[i];
    kinked += r.weights[i] * (std::abs(r.nodes[i] - 0.3) + std::sqrt(std::max(0.0, 0.36 - r.nodes[i] * r.nodes[i])));
  }
  CHECK(std::abs(total - 1.0) < 1e-14);
  // (1/2) int |t - 0.3| dt = 0.545 and (1/2) int sqrt(0.36 - t^2)_+ dt = 0.09 pi.
  CHECK(std::abs(kinked - (0.545 + 0.09 * kPi)) < 1e-12);
}

TEST_CASE("fibonacci directions") {
  const auto one = fibonacci_directions(1, true);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Vec3(0, 0, 1));

  auto min_angle = [](const std::vector<Vec3>& pts) {
    double best = kPi;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        best = std::min(best, std::acos(std::clamp(pts[i].dot(pts[j]), -1.0, 1.0)));
      }
    }
    return best;
  };
  const auto hemi = fibonacci_directions(100, true);
  for (const Vec3& v : hemi) {
    CHECK(v.z() >= 0.0);
    CHECK(std::abs(v.norm() - 1.0) < 1e-14);
  }
  CHECK(min_angle(hemi) > 10.0 * kPi / 180.0);
  CHECK(min_angle(fibonacci_directions(100, false)) > 10.0 * kPi / 180.0);
  CHECK(min_angle(fibonacci_directions(2, true)) >= kPi / 3.0);
  CHECK(min_angle(fibonacci_directions(2, false)) >= kPi / 3.0);
  CHECK_THROWS_AS(fibonacci_directions(0, true), InvalidArgument);
}

TEST_CASE("circle rules") {
  // Panels are Gauss rules between breakpoints: smooth low-degree parts are
  // integrated to rounding, kinks placed at breakpoints cost nothing.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 20; ++trial) {
    double a[3], b[3];
    for (int j = 0; j < 3; ++j) {
      a[j] = n(rng);
      b[j] = n(rng);
    }
    const double beta = angle(rng);
    const double c = n(rng);
    auto f = [&](double phi) {
      double s = a[0] + c * std::abs(std::cos(phi - beta));
      for (int j = 1; j <= 2; ++j) s += a[j] * std::cos(j * phi) + b[j] * std::sin(j * phi);
      return s;
    };
    std::vector<double> breaks{beta + kPi / 2, beta + 3 * kPi / 2};
    for (int j = 0; j < trial % 4; ++j) breaks.push_back(angle(rng));
    const CircleRule rule = circle_rule(breaks, 16);
    double total = 0.0, s = 0.0;
    for (std::size_t i = 0; i < rule.angles.size(); ++i) {
      CHECK(rule.angles[i] >= 0.0);
      CHECK(rule.angles[i] < kTwoPi);
      total += rule.weights[i];
      s += rule.weights[i] * f(rule.angles[i]);
    }
    CHECK(std::abs(total - 1.0) < 1e-13);
    CHECK(std::abs(s - (a[0] + 2.0 * c / kPi)) < 1e-12);
  }
  // Uniform rule: exact below the node count.
  const CircleRule uniform = circle_rule({}, 9);
  double s = 0.0;
  for (std::size_t i = 0; i < uniform.angles.size(); ++i) s += uniform.weights[i] * std::cos(8 * uniform.angles[i]);
  CHECK(std::abs(s) < 1e-13);
  CHECK_THROWS_AS(circle_rule({}, 0), InvalidArgument);
}

TEST_CASE("orbit rule examples") {
  const Vec3 e3(0, 0, 1);
  const OrbitRule pole = orbit_rule(e3, 1.0, {});
  REQUIRE(pole.points.size() == 1);
  CHECK(pole.points[0] == e3);
  CHECK(pole.weights[0] == 1.0);
  CHECK(orbit_rule(e3, 1.0 + 1e-13, {}).points.size() == 1);
  CHECK_THROWS_AS(orbit_rule(e3, 1.0 + 1e-9, {}), InvalidArgument);

  auto average = [](const OrbitRule& r, auto&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) s += r.weights[i] * f(r.points[i]);
    return s;
  };
  const OrbitRule equator = orbit_rule(e3, 0.0, {});
  CHECK(std::abs(average(equator, [](const Vec3& x) { return x.x() * x.x(); }) - 0.5) < 1e-12);

  // Breakpoints where x1 or x2 changes sign on the circle.
  const OrbitFrame f = orbit_frame(e3);
  std::vector<double> breaks;
  for (const Vec3& v : {Vec3(1, 0, 0), Vec3(0, 1, 0)}) {
    for (double phi : circle_crossings(0.0, v.dot(f.e1), v.dot(f.e2))) breaks.push_back(phi);
  }
  const OrbitRule kinked = orbit_rule(e3, 0.0, breaks);
  CHECK(std::abs(average(kinked, [](const Vec3& x) { return std::abs(x.x()) + std::abs(x.y()); }) - 4.0 / kPi) <
        1e-10);
}

TEST_CASE("orbit frame is orthonormal and deterministic") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Vec3 u = testing::random_unit(rng);
    const OrbitFrame f = orbit_frame(u);
    CHECK(std::abs(f.e1.norm() - 1.0) < 1e-14);
    CHECK(std::abs(f.e2.norm() - 1.0) < 1e-14);
    CHECK(std::abs(f.e1.dot(u)) < 1e-14);
    CHECK(std::abs(f.e2.dot(u)) < 1e-14);
    CHECK(std::abs(f.e1.dot(f.e2)) < 1e-14);
  }
  const OrbitFrame polar = orbit_frame(Vec3(0, 0, 1));
  CHECK((polar.e1 - Vec3(0, -1, 0)).norm() < 1e-15);
  CHECK((polar.e2 - Vec3(1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("orbit rule integrates kinked linear functions") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uni(-0.95, 0.95), angle(0.0, kTwoPi);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 u = testing::random_unit(rng);
    const double t = uni(rng);
    const OrbitFrame f = orbit_frame(u);
    const double rad = std::sqrt(1.0 - t * t);
    // |<a, x>| is kinked where the orbit crosses a's equator.
    const Vec3 a = testing::random_unit(rng);
    std::vector<double> breaks = circle_crossings(t * a.dot(u), rad * a.dot(f.e1), rad * a.dot(f.e2));
    for (int j = 0; j < trial % 3; ++j) breaks.push_back(angle(rng));
    const OrbitRule r = orbit_rule(u, t, breaks);
    auto g = [&](const Vec3& x) { return std::abs(a.dot(x)) + std::pow(a.dot(x), 2); };
    double s = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) s += r.weights[i] * g(r.points[i]);
    // Closed form: with x = t u + rad (cos phi e1 + sin phi e2), <a, x> = c + rho cos(phi - psi).
    const double c = t * a.dot(u);
    const double rho = rad * std::hypot(a.dot(f.e1), a.dot(f.e2));
    double mean_abs = std::abs(c);
    if (rho > std::abs(c)) {
      const double d = std::acos(-c / rho);
      mean_abs = (c * (2 * d - kPi) + 2 * rho * std::sin(d)) / kPi;
    }
    const double exact = mean_abs + c * c + 0.5 * rho * rho;
    CHECK(std::abs(s - exact) < 1e-12);
  }
}

TEST_CASE("circle crossings") {
  CHECK(circle_crossings(2.0, 1.0, 0.0).empty());
  const auto c = circle_crossings(0.0, 1.0, 0.0);
  REQUIRE(c.size() == 2);
  for (double phi : c) CHECK(std::abs(std::cos(phi)) < 1e-15);
}
