#pragma once

#include "spinlab/common.hpp"
#include "spinlab/spheregrid.hpp"
#include "spinlab/zonal.hpp"

#include <span>
#include <vector>

namespace spinlab {

/// Packed index of Y_{k,m}, -k <= m <= k.
constexpr int sh_index(int k, int m) { return k * k + k + m; }

/// Real spherical-harmonic coefficients up to degree L. The basis is
/// orthonormal with respect to the probability measure sigma:
///   Y_{k,0} = P~_k^0(t), Y_{k,m} = sqrt(2) P~_k^m(t) cos(m phi),
///   Y_{k,-m} = sqrt(2) P~_k^m(t) sin(m phi), with
///   P~_k^m = sqrt((2k+1)(k-m)!/(k+m)!) P_k^m (no Condon-Shortley phase).
class HarmonicCoeffs {
 public:
  HarmonicCoeffs() : HarmonicCoeffs(0) {}
  explicit HarmonicCoeffs(int L);

  int degree() const { return degree_; }
  double& operator()(int k, int m) { return c_[static_cast<std::size_t>(sh_index(k, m))]; }
  double operator()(int k, int m) const { return c_[static_cast<std::size_t>(sh_index(k, m))]; }
  std::span<double> data() { return c_; }
  std::span<const double> data() const { return c_; }

  /// Copy truncated or zero-padded to degree L.
  HarmonicCoeffs with_degree(int L) const;

  double max_abs() const;
  /// Largest |c| over odd degrees, and the degree where it occurs (-1 if none).
  std::pair<double, int> odd_max_abs() const;

 private:
  int degree_;
  std::vector<double> c_;
};

/// Normalized associated Legendre functions P~_k^m(t), 0 <= m <= k <= L, by
/// the fully normalized upward recurrence seeded at each diagonal. Packed at
/// k(k+1)/2 + m.
class AssociatedLegendreTable {
 public:
  explicit AssociatedLegendreTable(int L);
  int degree() const { return degree_; }
  std::size_t size() const { return static_cast<std::size_t>((degree_ + 1) * (degree_ + 2) / 2); }
  static constexpr std::size_t index(int k, int m) {
    return static_cast<std::size_t>(k * (k + 1) / 2 + m);
  }
  void evaluate(double t, std::span<double> out) const;

 private:
  int degree_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> diag_;
};

/// All Y_{k,m}(x), k <= L, packed by sh_index. Reuses the table's recurrence.
void sh_values(const AssociatedLegendreTable& table, const Vec3& x, std::span<double> out);

struct ShValue {
  int k;
  int m;
  double value;
};

/// All real orthonormal harmonics of degree <= L at a unit vector.
std::vector<ShValue> sh_eval(int L, const Vec3& x);

/// coeffs[k,m] = grid integral of samples * Y_{k,m}.
HarmonicCoeffs analyze(const SphereGrid& grid, std::span<const double> samples, int L);

/// Pointwise sum_{k,m} coeffs[k,m] Y_{k,m}(x).
std::vector<double> synthesize(const HarmonicCoeffs& coeffs, std::span<const Vec3> points);
double synthesize(const HarmonicCoeffs& coeffs, const Vec3& x);

/// Synthesis at every grid node, ordered like grid.nodes().
std::vector<double> synthesize(const HarmonicCoeffs& coeffs, const SphereGrid& grid);

/// Eigenvalues of the cosine transform on degree-k harmonics.
class MultiplierTable {
 public:
  explicit MultiplierTable(std::vector<double> lambda) : lambda_(std::move(lambda)) {}
  int degree() const { return static_cast<int>(lambda_.size()) - 1; }
  double operator[](int k) const { return lambda_[static_cast<std::size_t>(k)]; }
  std::span<const double> values() const { return lambda_; }

 private:
  std::vector<double> lambda_;
};

/// lambda_k = (1/2) int_{-1}^{1} |t| P_k(t) dt, by Gauss rules on [-1,0] and [0,1].
MultiplierTable cosine_multipliers(int L);

/// Zonal projection about u: a_k = sum_m coeffs[k,m] Y_{k,m}(u). This is the
/// Legendre form of the orbit average of the synthesized function.
ZonalProfile project_zonal(const HarmonicCoeffs& coeffs, const Vec3& u);

/// Full harmonic form of a zonal profile: c[k,m] = a_k Y_{k,m}(axis)/(2k+1).
HarmonicCoeffs zonal_to_harmonic(const ZonalProfile& profile);

}  // namespace spinlab
