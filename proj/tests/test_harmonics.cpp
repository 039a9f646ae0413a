#include "spinlab/harmonics.hpp"
#include "spinlab/spheregrid.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace spinlab;

TEST_CASE("legendre_P examples") {
  CHECK(legendre_P(0, 0.37) == 1.0);
  CHECK(std::abs(legendre_P(2, 0.0) + 0.5) < 1e-16);
  CHECK(std::abs(legendre_P(10, 1.0) - 1.0) < 1e-14);
  CHECK(std::abs(legendre_P(3, 0.5) - (2.5 * 0.125 - 1.5 * 0.5)) < 1e-15);
  CHECK_THROWS_AS(legendre_P(2, 1.1), InvalidArgument);
}

TEST_CASE("sh_eval normalization and addition theorem") {
  std::mt19937_64 rng(21);
  const auto at_pole = sh_eval(0, Vec3(0, 0, 1));
  REQUIRE(at_pole.size() == 1);
  CHECK(at_pole[0].value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(sh_eval(4, Vec3(1, 1, 0)), InvalidArgument);

  std::uniform_int_distribution<int> degree(0, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = trial == 0 ? 4 : degree(rng);
    const Vec3 x = testing::random_unit(rng), y = testing::random_unit(rng);
    const auto yx = sh_eval(k, x), yy = sh_eval(k, y);
    double s = 0.0;
    for (std::size_t i = 0; i < yx.size(); ++i) {
      if (yx[i].k == k) s += yx[i].value * yy[i].value;
    }
    CHECK(std::abs(s - (2 * k + 1) * legendre_P(k, x.dot(y))) < 1e-10);
  }
}

TEST_CASE("Gram matrix on the default grid is the identity") {
  for (int L : {8, 32}) {
    const SphereGrid grid = product_sphere_grid(kDefaultThetaNodes, kDefaultPhiNodes);
    const AssociatedLegendreTable table(L);
    const int n = (L + 1) * (L + 1);
    Eigen::MatrixXd B(static_cast<Eigen::Index>(grid.size()), n);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sh_values(table, grid.nodes()[i], y);
      const double w = std::sqrt(grid.weights()[i]);
      for (int j = 0; j < n; ++j) B(static_cast<Eigen::Index>(i), j) = w * y[static_cast<std::size_t>(j)];
    }
    const Eigen::MatrixXd G = B.transpose() * B;
    const double err = (G - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    CHECK(err < (L <= 8 ? 1e-11 : 1e-10));
  }
}

TEST_CASE("analyze examples") {
  const SphereGrid grid = product_sphere_grid(24, 48);
  const HarmonicCoeffs one = analyze(grid, grid.sample([](const Vec3&) { return 1.0; }), 10);
  CHECK(std::abs(one(0, 0) - 1.0) < 1e-14);
  double rest = 0.0;
  for (std::size_t i = 1; i < one.data().size(); ++i) rest = std::max(rest, std::abs(one.data()[i]));
  CHECK(rest < 1e-14);

  const HarmonicCoeffs z = analyze(grid, grid.sample([](const Vec3& x) { return x.z(); }), 10);
  // Y_10 = sqrt(3) z.
  CHECK(std::abs(z(1, 0) - 1.0 / std::sqrt(3.0)) < 1e-14);
  double others = 0.0;
  for (int k = 0; k <= 10; ++k) {
    for (int m = -k; m <= k; ++m) {
      if (!(k == 1 && m == 0)) others = std::max(others, std::abs(z(k, m)));
    }
  }
  CHECK(others < 1e-14);

  CHECK_THROWS_AS(analyze(grid, grid.sample([](const Vec3&) { return 1.0; }), 24), InvalidArgument);
}

TEST_CASE("synthesize examples and round trip") {
  std::mt19937_64 rng(4);
  HarmonicCoeffs zero(6);
  const auto pts = fibonacci_directions(20, false);
  for (double v : synthesize(zero, pts)) CHECK(v == 0.0);

  HarmonicCoeffs p2(4);
  p2(2, 0) = 1.0;
  for (const Vec3& x : pts) CHECK(std::abs(synthesize(p2, x) - std::sqrt(5.0) * legendre_P(2, x.z())) < 1e-14);

  std::normal_distribution<double> n(0.0, 1.0);
  const int L = 16;
  HarmonicCoeffs f(L);
  for (double& c : f.data()) c = n(rng);
  const SphereGrid grid = product_sphere_grid(L + 1, 2 * L + 2);
  const std::vector<double> samples = synthesize(f, grid);
  const HarmonicCoeffs back = analyze(grid, samples, L);
  double worst = 0.0;
  const std::vector<double> again = synthesize(back, grid);
  for (std::size_t i = 0; i < samples.size(); ++i) worst = std::max(worst, std::abs(again[i] - samples[i]));
  CHECK(worst < 1e-10);

  // Ring-based synthesis agrees with pointwise synthesis.
  const std::vector<double> pointwise = synthesize(f, grid.nodes());
  for (std::size_t i = 0; i < samples.size(); ++i) CHECK(std::abs(pointwise[i] - samples[i]) < 1e-11);

  // Parseval.
  double energy = 0.0;
  for (double c : f.data()) energy += c * c;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = samples[i] * samples[i];
  CHECK(std::abs(grid.integrate(sq) - energy) < 1e-8 * energy);
}

TEST_CASE("cosine multipliers") {
  const MultiplierTable lam = cosine_multipliers(64);
  CHECK(std::abs(lam[0] - 0.5) < 1e-15);
  CHECK(std::abs(lam[2] - 0.125) < 1e-15);
  CHECK(std::abs(lam[4] + 1.0 / 48.0) < 1e-15);
  for (int k = 1; k <= 64; k += 2) CHECK(lam[k] == 0.0);
  // Closed form -P_k(0) / ((k - 1)(k + 2)) for even k.
  for (int k = 2; k <= 64; k += 2) {
    const double closed = -legendre_P(k, 0.0) / ((k - 1.0) * (k + 2.0));
    CHECK(std::abs(lam[k] - closed) < 1e-15);
    CHECK(lam[k] * ((k / 2) % 2 == 1 ? 1.0 : -1.0) > 0.0);
    if (k >= 4) CHECK(std::abs(lam[k]) < std::abs(lam[k - 2]));
  }
  CHECK(std::abs(lam[64] + 2.389e-5) < 1e-8);
}

TEST_CASE("multipliers are eigenvalues of the |<x,y>| kernel") {
  // x at the pole: the kernel is |t|, integrated exactly by splitting at the equator.
  const SphereGrid grid = product_sphere_grid(128, 256, LatitudeRule::split_equator);
  const MultiplierTable lam = cosine_multipliers(32);
  const Vec3 x(0, 0, 1);
  const Vec3 u = Vec3(0.3, -0.2, 0.9).normalized();
  for (int k = 0; k <= 32; k += 2) {
    const double q = grid.integrate(grid.sample([&](const Vec3& y) { return std::abs(x.dot(y)) * legendre_P(k, y.dot(u)); }));
    CHECK(std::abs(q - lam[k] * legendre_P(k, x.dot(u))) < 1e-9);
  }
}

TEST_CASE("project_zonal examples") {
  std::mt19937_64 rng(8);
  const Vec3 u = testing::random_unit(rng);
  const auto yu = sh_eval(8, u);
  for (const ShValue& y : yu) {
    HarmonicCoeffs c(8);
    c(y.k, y.m) = 1.0;
    const ZonalProfile p = project_zonal(c, u);
    for (int k = 0; k <= 8; ++k) CHECK(std::abs(p.legendre[k] - (k == y.k ? y.value : 0.0)) < 1e-14);
  }

  // A zonal function about u keeps its Legendre coefficients.
  ZonalProfile zonal;
  zonal.axis = u;
  zonal.legendre = {1.0, 0.0, 0.3, 0.0, -0.2};
  const ZonalProfile again = project_zonal(zonal_to_harmonic(zonal), u);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(again.legendre[k] - zonal.legendre[k]) < 1e-14);

  // Evaluation at t = 1 is the value at u.
  const HarmonicCoeffs f = testing::random_even(rng, 12, 1.0);
  CHECK(std::abs(legendre_series(project_zonal(f, u).legendre, 1.0) - synthesize(f, u)) < 1e-13);
}

TEST_CASE("spectral spin equals orbit averaging") {
  std::mt19937_64 rng(17);
  const QuadratureRule g = gauss_legendre_rule(24);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const HarmonicCoeffs f = testing::random_even(rng, 16, 1.0);
    const Vec3 u = testing::random_unit(rng);
    const ZonalProfile p = project_zonal(f, u);
    for (double t : g.nodes) {
      const OrbitRule r = orbit_rule(u, t, {}, 34);
      double avg = 0.0;
      for (std::size_t i = 0; i < r.points.size(); ++i) avg += r.weights[i] * synthesize(f, r.points[i]);
      worst = std::max(worst, std::abs(avg - legendre_series(p.legendre, t)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("HarmonicCoeffs helpers") {
  HarmonicCoeffs c(4);
  c(3, -2) = 0.5;
  c(2, 1) = -2.0;
  CHECK(c.max_abs() == 2.0);
  const auto [odd, degree] = c.odd_max_abs();
  CHECK(odd == 0.5);
  CHECK(degree == 3);
  const HarmonicCoeffs lo = c.with_degree(2);
  CHECK(lo.degree() == 2);
  CHECK(lo(2, 1) == -2.0);
  const HarmonicCoeffs hi = c.with_degree(6);
  CHECK(hi(3, -2) == 0.5);
  CHECK(hi(6, 6) == 0.0);
}
