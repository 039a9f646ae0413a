#include "spinlab/transforms.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinlab;

namespace {

double sup_diff(const ZonalProfile& a, const ZonalProfile& b, int n = 201) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = -1.0 + 2.0 * i / (n - 1);
    worst = std::max(worst, std::abs(zonal_eval(a, t) - zonal_eval(b, t)));
  }
  return worst;
}

ZonalProfile apply_multipliers(ZonalProfile p) {
  const MultiplierTable lam = cosine_multipliers(p.degree());
  for (int k = 0; k <= p.degree(); ++k) p.legendre[k] *= lam[k];
  return p;
}

// Legendre coefficients of |t| + (4/pi) sqrt(1 - t^2), the cube spin about
// e3, by Gauss quadrature in theta on either side of the equator.
std::vector<double> cube_spin_legendre(int L) {
  std::vector<double> a(static_cast<std::size_t>(L + 1), 0.0);
  for (const auto& [lo, hi] : {std::pair{0.0, kPi / 2}, std::pair{kPi / 2, kPi}}) {
    const QuadratureRule g = gauss_legendre_rule(200, lo, hi);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double t = std::cos(g.nodes[i]);
      const double f = std::abs(t) + 4.0 / kPi * std::sin(g.nodes[i]);
      for (int k = 0; k <= L; ++k) a[k] += 0.5 * (2 * k + 1) * g.weights[i] * std::sin(g.nodes[i]) * f * legendre_P(k, t);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("cosine quadrature examples") {
  const SphereGrid grid = product_sphere_grid(kDefaultThetaNodes, kDefaultPhiNodes);
  const auto pts = fibonacci_directions(30, false);
  for (double v : cosine_quadrature(grid, grid.sample([](const Vec3&) { return 1.0; }), pts)) {
    CHECK(std::abs(v - 0.5) < 1e-6);
  }
  for (double v : cosine_quadrature(grid, grid.sample([](const Vec3&) { return 2.0; }), pts)) {
    CHECK(std::abs(v - 1.0) < 1e-6);
  }
  const Vec3 u = Vec3(1, 2, 2).normalized();
  const auto vals = cosine_quadrature(grid, grid.sample([&](const Vec3& y) { return legendre_P(2, y.dot(u)); }), pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(vals[i] - 0.125 * legendre_P(2, pts[i].dot(u))) < 2e-5);
  }
}

TEST_CASE("cosine_spectral") {
  HarmonicCoeffs two(4);
  two(0, 0) = 2.0;
  const HarmonicCoeffs one = cosine_spectral(two);
  CHECK(std::abs(one(0, 0) - 1.0) < 1e-15);
  CHECK(cosine_spectral(HarmonicCoeffs(6)).max_abs() == 0.0);

  HarmonicCoeffs odd(4);
  odd(0, 0) = 1.0;
  odd(3, 1) = 0.2;
  CHECK_THROWS_WITH_AS(cosine_spectral(odd), doctest::Contains("degree 3"), InvalidInput);

  // Against quadrature on a grid fine enough for the kernel's kink.
  std::mt19937_64 rng(31);
  const HarmonicCoeffs f = testing::random_even(rng, 8, 1.0);
  const SphereGrid grid = product_sphere_grid(384, 768);
  std::vector<Vec3> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(testing::random_unit(rng));
  const auto quad = cosine_quadrature(grid, synthesize(f, grid), pts);
  const HarmonicCoeffs cf = cosine_spectral(f);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(quad[i] - synthesize(cf, pts[i])));
  CHECK(worst < 1e-6);
}

TEST_CASE("inverse cosine transform") {
  HarmonicCoeffs ball(8);
  ball(0, 0) = 1.0;
  const GeneratingCoeffs g = inverse_cosine_spectral(ball);
  CHECK(std::abs(g.coeffs(0, 0) - 2.0) < 1e-15);
  CHECK(g.suppressed_degrees.empty());

  HarmonicCoeffs deg2(4);
  deg2(2, 0) = 0.7;
  CHECK(std::abs(inverse_cosine_spectral(deg2).coeffs(2, 0) - 5.6) < 1e-14);

  std::mt19937_64 rng(2);
  const HarmonicCoeffs f = testing::random_even(rng, 32, 1.0);
  const HarmonicCoeffs back = inverse_cosine_spectral(cosine_spectral(f)).coeffs;
  double coeff_err = 0.0;
  for (std::size_t i = 0; i < f.data().size(); ++i) coeff_err = std::max(coeff_err, std::abs(back.data()[i] - f.data()[i]));
  CHECK(coeff_err < 1e-10);
  const SphereGrid grid = product_sphere_grid(33, 66);
  const auto a = synthesize(f, grid), b = synthesize(back, grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sup = std::max(sup, std::abs(a[i] - b[i]));
  CHECK(sup < 1e-8);

  HarmonicCoeffs odd(3);
  odd(1, 0) = 1.0;
  CHECK_THROWS_AS(inverse_cosine_spectral(odd), IllPosedInput);
  CHECK_THROWS_AS(inverse_cosine_spectral(ball, 0.0), InvalidArgument);
  CHECK_THROWS_AS(inverse_cosine_spectral(HarmonicCoeffs(257)), InvalidArgument);

  // A coarse guard suppresses high degrees; content there is ill-posed.
  HarmonicCoeffs high(16);
  high(0, 0) = 1.0;
  const GeneratingCoeffs guarded = inverse_cosine_spectral(high, 1e-3);
  CHECK_FALSE(guarded.suppressed_degrees.empty());
  high(16, 3) = 0.1;
  CHECK_THROWS_AS(inverse_cosine_spectral(high, 1e-3), IllPosedInput);
}

TEST_CASE("spin_orbit examples") {
  const Vec3 e3(0, 0, 1);
  const ZonalProfile ball = spin_orbit(Body::ball(1.7), e3);
  for (double v : ball.sample_value) CHECK(std::abs(v - 1.7) < 1e-14);
  CHECK(std::abs(ball.legendre[0] - 1.7) < 1e-13);

  const ZonalProfile cube = spin_orbit(Body::cube(1.0), e3);
  REQUIRE(cube.sample_t.size() == 64);
  for (std::size_t i = 0; i < cube.sample_t.size(); ++i) {
    const double t = cube.sample_t[i];
    CHECK(std::abs(cube.sample_value[i] - (4.0 / kPi * std::sqrt(1.0 - t * t) + std::abs(t))) < 1e-8);
  }
  CHECK(std::abs(value_at_pole(cube) - 1.0) < 1e-10);
  CHECK(odd_part_magnitude(cube) <= kParityTol * max_coefficient(cube));

  const double zero = 0.0;
  const auto oct = sample_spin(Body::octahedron(1.0), e3, std::span<const double>(&zero, 1));
  CHECK(std::abs(oct[0] - 2.0 * std::sqrt(2.0) / kPi) < 1e-12);

  std::mt19937_64 rng(5);
  for (const Body& b : {Body::cube(1.3), Body::octahedron(0.8), Body::zonotope({Vec3(1, 0, 0)}, {2.0})}) {
    const Vec3 u = testing::random_unit(rng);
    CHECK(std::abs(value_at_pole(spin_orbit(b, u)) - support_eval(b, u)) < 1e-9);
  }

  HarmonicCoeffs odd(3);
  odd(0, 0) = 2.0;
  odd(1, 0) = 0.1;
  CHECK_THROWS_AS(spin_orbit(Body::bandlimited(odd), e3), InvalidInput);
}

TEST_CASE("zonal_eval examples") {
  const Vec3 e3(0, 0, 1);
  const ZonalProfile ball = spin_orbit(Body::ball(1.0), e3);
  for (double t : {-1.0, -0.3, 0.0, 0.8, 1.0}) CHECK(std::abs(zonal_eval(ball, t) - 1.0) < 1e-13);
  const ZonalProfile cube = spin_orbit(Body::cube(1.0), e3);
  const std::vector<double> exact = cube_spin_legendre(64);
  double coeff_err = 0.0;
  for (int k = 0; k <= 64; ++k) coeff_err = std::max(coeff_err, std::abs(cube.legendre[k] - exact[k]));
  CHECK(coeff_err < 1e-12);
  // The truncated series misses the kinks; the pole value does not.
  for (double t : {0.0, 0.5, 1.0}) CHECK(std::abs(zonal_eval(cube, t) - legendre_series(exact, t)) < 1e-12);
  CHECK(std::abs(zonal_eval(cube, 1.0) - 1.0) > 1e-3);
  CHECK(value_at_pole(cube) == 1.0);
  CHECK_THROWS(zonal_eval(cube, 1.5));
}

TEST_CASE("spin_spectral") {
  std::mt19937_64 rng(19);
  const Vec3 u = testing::random_unit(rng);
  ZonalProfile zonal;
  zonal.axis = u;
  zonal.legendre = {1.0, 0.0, -0.4, 0.0, 0.25};
  const ZonalProfile same = spin_spectral(zonal_to_harmonic(zonal), u);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(same.legendre[k] - zonal.legendre[k]) < 1e-14);

  // Idempotence on the spun function.
  const HarmonicCoeffs f = testing::random_even(rng, 12, 1.0);
  const ZonalProfile once = spin_spectral(f, u);
  const ZonalProfile twice = spin_spectral(zonal_to_harmonic(once), u);
  for (int k = 0; k <= 12; ++k) CHECK(std::abs(once.legendre[k] - twice.legendre[k]) < 1e-12);

  // Band-limited bodies: spectral and orbit spins agree.
  const Body body = Body::bandlimited(testing::random_even(rng, 16, 3.0));
  const ZonalProfile orbit = spin_orbit(body, u, SpinOptions{16, 64, 16});
  const ZonalProfile spectral = spin_spectral(expand(body, 16), u);
  for (std::size_t i = 0; i < orbit.sample_t.size(); ++i) {
    CHECK(std::abs(orbit.sample_value[i] - zonal_eval(spectral, orbit.sample_t[i])) < 1e-8);
  }

  // Truncated cube: the spectral spin of the degree-64 expansion is the
  // degree-64 Legendre truncation of the spin.
  const Vec3 e3(0, 0, 1);
  const ZonalProfile cube_spec = spin_spectral(expand(Body::cube(1.0), 64), e3);
  const std::vector<double> exact = cube_spin_legendre(64);
  for (int k = 0; k <= 64; ++k) CHECK(std::abs(cube_spec.legendre[k] - exact[k]) < 1e-10);
}

TEST_CASE("commutation of the cosine transform with spins") {
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const HarmonicCoeffs f = testing::random_even(rng, 16, 1.0);
    const HarmonicCoeffs cf = cosine_spectral(f);
    for (int j = 0; j < 10; ++j) {
      const Vec3 u = testing::random_unit(rng);
      worst = std::max(worst, sup_diff(apply_multipliers(spin_spectral(f, u)), spin_spectral(cf, u)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("spin preserves positivity") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 5; ++i) {
    const Body body = Body::bandlimited(testing::random_even(rng, 12, 1.5));
    const ZonalProfile p = spin_orbit(body, testing::random_unit(rng), SpinOptions{12, 64, 16});
    for (double v : p.sample_value) CHECK(v >= -1e-12);
  }
}

TEST_CASE("Poisson smoothing") {
  HarmonicCoeffs one(6);
  one(0, 0) = 1.0;
  for (double r : {0.1, 0.9, 0.999}) CHECK(poisson_smooth(one, r)(0, 0) == 1.0);
  CHECK_THROWS_AS(poisson_smooth(one, 0.0), InvalidArgument);
  CHECK_THROWS_AS(poisson_smooth(one, 1.0), InvalidArgument);
  ZonalProfile p;
  p.legendre = {1.0, 0.0, 1.0};
  CHECK_THROWS_AS(poisson_smooth(p, -0.5), InvalidArgument);
  CHECK(std::abs(poisson_smooth(p, 0.5).legendre[2] - 0.25) < 1e-16);

  // Kernel normalization and multipliers by direct quadrature.
  const double r = 0.9;
  const SphereGrid grid = product_sphere_grid(256, 512);
  const Vec3 x = Vec3(0.2, 0.5, -0.7).normalized();
  const Vec3 u = Vec3(-0.4, 0.1, 0.6).normalized();
  const double norm = grid.integrate(grid.sample([&](const Vec3& y) { return poisson_kernel(r, x.dot(y)); }));
  CHECK(std::abs(norm - 1.0) < 1e-10);
  for (int k = 1; k <= 16; ++k) {
    const double q = grid.integrate(
        grid.sample([&](const Vec3& y) { return poisson_kernel(r, x.dot(y)) * legendre_P(k, y.dot(u)); }));
    CHECK(std::abs(q - std::pow(r, k) * legendre_P(k, x.dot(u))) < 1e-8);
  }

  // r -> 1: since 1 - r^k <= k (1 - r) and |Y_km| <= sqrt(2k+1),
  // sup |P_r f - f| <= (1 - r) L sum |c_km| sqrt(2k+1).
  std::mt19937_64 rng(37);
  const int L = 12;
  const HarmonicCoeffs f = testing::random_even(rng, L, 1.0);
  const SphereGrid g = product_sphere_grid(L + 1, 2 * L + 2);
  const auto base = synthesize(f, g);
  double mass = 0.0;
  for (int k = 1; k <= L; ++k) {
    for (int m = -k; m <= k; ++m) mass += std::abs(f(k, m)) * std::sqrt(2.0 * k + 1.0);
  }
  for (double rr : {0.9, 0.99, 0.999}) {
    const auto s = synthesize(poisson_smooth(f, rr), g);
    double sup = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sup = std::max(sup, std::abs(s[i] - base[i]));
    CHECK(sup <= (1.0 - rr) * L * mass);
  }
}

TEST_CASE("Poisson smoothing keeps nonnegative functions nonnegative") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n(0.0, 1.0);
  const SphereGrid grid = product_sphere_grid(40, 80);
  for (int trial = 0; trial < 10; ++trial) {
    HarmonicCoeffs g(8);
    for (double& v : g.data()) v = n(rng);
    const auto gv = synthesize(g, grid);
    std::vector<double> f(gv.size());
    double fmax = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = gv[i] * gv[i];
      fmax = std::max(fmax, f[i]);
    }
    const HarmonicCoeffs fc = analyze(grid, f, 16);
    for (double r : {0.3, 0.9, 0.99}) {
      for (double v : synthesize(poisson_smooth(fc, r), grid)) CHECK(v >= -1e-9 * fmax);
    }
  }
}
