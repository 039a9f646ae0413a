#pragma once

#include "spinlab/common.hpp"

#include <optional>
#include <span>
#include <vector>

namespace spinlab {

enum class ProfileKind { support, generating, generic };

/// Zonal function g(x) = sum_k a_k P_k(<x, axis>), stored by its Legendre
/// coefficients. Spin bodies and per-direction generating densities live here.
struct ZonalProfile {
  Vec3 axis = Vec3::UnitZ();
  std::vector<double> legendre;  // a_0 .. a_L
  ProfileKind kind = ProfileKind::generic;

  // Optional direct samples (e.g. orbit averages at Gauss nodes). These are
  // exact values of the spun function, not the truncated Legendre series.
  std::vector<double> sample_t;
  std::vector<double> sample_value;

  // Value at t = 1 from the identity (S_u f)(u) = f(u), when known.
  std::optional<double> pole_value;

  int degree() const { return static_cast<int>(legendre.size()) - 1; }
};

/// P_k(t) by the three-term recurrence.
double legendre_P(int k, double t);

/// P_0(t) .. P_L(t) into out (size L + 1).
void legendre_values(int L, double t, std::span<double> out);

/// sum_k a_k P_k(t).
double legendre_series(std::span<const double> a, double t);

/// Legendre sum of the profile at each t. Requires |t| <= 1.
std::vector<double> zonal_eval(const ZonalProfile& profile, std::span<const double> t_values);
double zonal_eval(const ZonalProfile& profile, double t);

/// Value at t = 1: pole_value when known, otherwise the Legendre sum.
double value_at_pole(const ZonalProfile& profile);

/// Largest |a_k| over odd k and over all k.
double odd_part_magnitude(const ZonalProfile& profile);
double max_coefficient(const ZonalProfile& profile);

/// Copy truncated or zero-padded to degree L.
ZonalProfile with_degree(const ZonalProfile& profile, int L);

}  // namespace spinlab
