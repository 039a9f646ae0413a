#include "spinlab/zonal.hpp"

#include <algorithm>
#include <cmath>

namespace spinlab {

double legendre_P(int k, double t) {
  if (k < 0) throw InvalidArgument("legendre_P: negative degree");
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw InvalidArgument("legendre_P: |t| > 1");
  if (k == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int n = 2; n <= k; ++n) {
    const double p2 = ((2.0 * n - 1.0) * t * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_values(int L, double t, std::span<double> out) {
  if (L < 0) return;
  out[0] = 1.0;
  if (L == 0) return;
  out[1] = t;
  for (int n = 2; n <= L; ++n) {
    out[static_cast<std::size_t>(n)] =
        ((2.0 * n - 1.0) * t * out[static_cast<std::size_t>(n - 1)] -
         (n - 1.0) * out[static_cast<std::size_t>(n - 2)]) / n;
  }
}

double legendre_series(std::span<const double> a, double t) {
  if (a.empty()) return 0.0;
  double sum = a[0];
  if (a.size() == 1) return sum;
  double p0 = 1.0, p1 = t;
  sum += a[1] * t;
  for (std::size_t n = 2; n < a.size(); ++n) {
    const double dn = static_cast<double>(n);
    const double p2 = ((2.0 * dn - 1.0) * t * p1 - (dn - 1.0) * p0) / dn;
    sum += a[n] * p2;
    p0 = p1;
    p1 = p2;
  }
  return sum;
}

double zonal_eval(const ZonalProfile& profile, double t) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw InvalidArgument("zonal_eval: |t| > 1");
  return legendre_series(profile.legendre, std::clamp(t, -1.0, 1.0));
}

std::vector<double> zonal_eval(const ZonalProfile& profile, std::span<const double> t_values) {
  std::vector<double> out;
  out.reserve(t_values.size());
  for (double t : t_values) out.push_back(zonal_eval(profile, t));
  return out;
}

double value_at_pole(const ZonalProfile& profile) {
  if (profile.pole_value) return *profile.pole_value;
  return legendre_series(profile.legendre, 1.0);
}

double odd_part_magnitude(const ZonalProfile& profile) {
  double m = 0.0;
  for (std::size_t k = 1; k < profile.legendre.size(); k += 2) m = std::max(m, std::abs(profile.legendre[k]));
  return m;
}

double max_coefficient(const ZonalProfile& profile) {
  double m = 0.0;
  for (double a : profile.legendre) m = std::max(m, std::abs(a));
  return m;
}

ZonalProfile with_degree(const ZonalProfile& profile, int L) {
  ZonalProfile out = profile;
  out.legendre.resize(static_cast<std::size_t>(L + 1), 0.0);
  return out;
}

}  // namespace spinlab
