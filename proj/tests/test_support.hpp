#pragma once

#include "spinlab/harmonics.hpp"

#include <random>

namespace testing {

inline spinlab::Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  spinlab::Vec3 v;
  do {
    v = spinlab::Vec3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

// Random even coefficients with decaying spectrum; c00 fixes the mean.
inline spinlab::HarmonicCoeffs random_even(std::mt19937_64& rng, int L, double c00) {
  std::normal_distribution<double> n(0.0, 1.0);
  spinlab::HarmonicCoeffs c(L);
  for (int k = 2; k <= L; k += 2) {
    for (int m = -k; m <= k; ++m) c(k, m) = n(rng) / (k * k);
  }
  c(0, 0) = c00;
  return c;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

}  // namespace testing
