#include "spinlab/harmonics.hpp"
#include "spinlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spinlab {

HarmonicCoeffs::HarmonicCoeffs(int L) : degree_(L) {
  if (L < 0) throw InvalidArgument("HarmonicCoeffs: negative degree");
  c_.assign(static_cast<std::size_t>((L + 1) * (L + 1)), 0.0);
}

HarmonicCoeffs HarmonicCoeffs::with_degree(int L) const {
  HarmonicCoeffs out(L);
  const int n = std::min(L, degree_);
  std::copy_n(c_.begin(), (n + 1) * (n + 1), out.c_.begin());
  return out;
}

double HarmonicCoeffs::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

std::pair<double, int> HarmonicCoeffs::odd_max_abs() const {
  double best = 0.0;
  int where = -1;
  for (int k = 1; k <= degree_; k += 2) {
    for (int m = -k; m <= k; ++m) {
      const double v = std::abs((*this)(k, m));
      if (v > best) {
        best = v;
        where = k;
      }
    }
  }
  return {best, where};
}

AssociatedLegendreTable::AssociatedLegendreTable(int L) : degree_(L) {
  if (L < 0) throw InvalidArgument("AssociatedLegendreTable: negative degree");
  a_.assign(size(), 0.0);
  b_.assign(size(), 0.0);
  diag_.assign(static_cast<std::size_t>(L + 1), 0.0);
  for (int m = 1; m <= L; ++m) {
    diag_[static_cast<std::size_t>(m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  }
  for (int m = 0; m <= L; ++m) {
    for (int k = m + 2; k <= L; ++k) {
      const double kk = k, mm = m;
      a_[index(k, m)] = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - mm * mm));
      b_[index(k, m)] = std::sqrt(((kk - 1.0) * (kk - 1.0) - mm * mm) /
                                  (4.0 * (kk - 1.0) * (kk - 1.0) - 1.0));
    }
  }
}

void AssociatedLegendreTable::evaluate(double t, std::span<double> out) const {
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  double pmm = 1.0;
  for (int m = 0; m <= degree_; ++m) {
    if (m > 0) pmm *= diag_[static_cast<std::size_t>(m)] * s;
    out[index(m, m)] = pmm;
    if (m + 1 <= degree_) out[index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * t * pmm;
    for (int k = m + 2; k <= degree_; ++k) {
      const std::size_t i = index(k, m);
      out[i] = a_[i] * (t * out[index(k - 1, m)] - b_[i] * out[index(k - 2, m)]);
    }
  }
}

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// cos(m phi), sin(m phi) for m = 0..L from cos(phi), sin(phi).
void trig_values(int L, double c1, double s1, std::span<double> cm, std::span<double> sm) {
  cm[0] = 1.0;
  sm[0] = 0.0;
  for (int m = 1; m <= L; ++m) {
    const auto i = static_cast<std::size_t>(m);
    cm[i] = cm[i - 1] * c1 - sm[i - 1] * s1;
    sm[i] = sm[i - 1] * c1 + cm[i - 1] * s1;
  }
}

}  // namespace

void sh_values(const AssociatedLegendreTable& table, const Vec3& x, std::span<double> out) {
  const int L = table.degree();
  std::vector<double> p(table.size());
  table.evaluate(std::clamp(x.z(), -1.0, 1.0), p);
  const double s = std::hypot(x.x(), x.y());
  const double c1 = s > 0.0 ? x.x() / s : 1.0;
  const double s1 = s > 0.0 ? x.y() / s : 0.0;
  std::vector<double> cm(static_cast<std::size_t>(L + 1)), sm(static_cast<std::size_t>(L + 1));
  trig_values(L, c1, s1, cm, sm);
  for (int k = 0; k <= L; ++k) {
    out[static_cast<std::size_t>(sh_index(k, 0))] = p[AssociatedLegendreTable::index(k, 0)];
    for (int m = 1; m <= k; ++m) {
      const double pk = kSqrt2 * p[AssociatedLegendreTable::index(k, m)];
      out[static_cast<std::size_t>(sh_index(k, m))] = pk * cm[static_cast<std::size_t>(m)];
      out[static_cast<std::size_t>(sh_index(k, -m))] = pk * sm[static_cast<std::size_t>(m)];
    }
  }
}

std::vector<ShValue> sh_eval(int L, const Vec3& x) {
  require_unit(x, "sh_eval");
  AssociatedLegendreTable table(L);
  std::vector<double> values(static_cast<std::size_t>((L + 1) * (L + 1)));
  sh_values(table, x, values);
  std::vector<ShValue> out;
  out.reserve(values.size());
  for (int k = 0; k <= L; ++k) {
    for (int m = -k; m <= k; ++m) out.push_back({k, m, values[static_cast<std::size_t>(sh_index(k, m))]});
  }
  return out;
}

HarmonicCoeffs analyze(const SphereGrid& grid, std::span<const double> samples, int L) {
  if (L < 0) throw InvalidArgument("analyze: negative degree");
  if (grid.max_band_limit() < L) {
    throw InvalidArgument("analyze: grid exact to degree " + std::to_string(grid.exact_degree()) +
                          " cannot resolve band limit " + std::to_string(L));
  }
  if (samples.size() != grid.size()) throw InvalidArgument("analyze: sample count does not match grid");

  const AssociatedLegendreTable table(L);
  const auto& rings = grid.rings();
  std::vector<std::size_t> offsets(rings.size() + 1, 0);
  for (std::size_t r = 0; r < rings.size(); ++r) offsets[r + 1] = offsets[r] + rings[r].phi.size();

  // Fixed chunking keeps the summation order independent of thread count.
  const std::size_t chunks = std::min<std::size_t>(64, std::max<std::size_t>(1, rings.size()));
  const std::size_t ncoef = static_cast<std::size_t>((L + 1) * (L + 1));
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(ncoef, 0.0));
  const auto nL = static_cast<std::size_t>(L + 1);

  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t r0 = rings.size() * c / chunks, r1 = rings.size() * (c + 1) / chunks;
    std::vector<double> p(table.size()), cm(nL), sm(nL), fc(nL), fs(nL);
    std::vector<double>& acc = partial[c];
    for (std::size_t r = r0; r < r1; ++r) {
      const Ring& ring = rings[r];
      std::fill(fc.begin(), fc.end(), 0.0);
      std::fill(fs.begin(), fs.end(), 0.0);
      for (std::size_t j = 0; j < ring.phi.size(); ++j) {
        const double wf = ring.phi_weights[j] * samples[offsets[r] + j];
        trig_values(L, std::cos(ring.phi[j]), std::sin(ring.phi[j]), cm, sm);
        for (std::size_t m = 0; m < nL; ++m) {
          fc[m] += wf * cm[m];
          fs[m] += wf * sm[m];
        }
      }
      table.evaluate(ring.t, p);
      for (int k = 0; k <= L; ++k) {
        acc[static_cast<std::size_t>(sh_index(k, 0))] += ring.weight * p[AssociatedLegendreTable::index(k, 0)] * fc[0];
        for (int m = 1; m <= k; ++m) {
          const double pk = ring.weight * kSqrt2 * p[AssociatedLegendreTable::index(k, m)];
          acc[static_cast<std::size_t>(sh_index(k, m))] += pk * fc[static_cast<std::size_t>(m)];
          acc[static_cast<std::size_t>(sh_index(k, -m))] += pk * fs[static_cast<std::size_t>(m)];
        }
      }
    }
  });

  HarmonicCoeffs out(L);
  auto data = out.data();
  for (const auto& acc : partial) {
    for (std::size_t i = 0; i < ncoef; ++i) data[i] += acc[i];
  }
  return out;
}

double synthesize(const HarmonicCoeffs& coeffs, const Vec3& x) {
  const AssociatedLegendreTable table(coeffs.degree());
  std::vector<double> y(coeffs.data().size());
  sh_values(table, x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += coeffs.data()[i] * y[i];
  return sum;
}

std::vector<double> synthesize(const HarmonicCoeffs& coeffs, std::span<const Vec3> points) {
  const AssociatedLegendreTable table(coeffs.degree());
  std::vector<double> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    std::vector<double> y(coeffs.data().size());
    sh_values(table, points[i], y);
    double sum = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) sum += coeffs.data()[j] * y[j];
    out[i] = sum;
  });
  return out;
}

std::vector<double> synthesize(const HarmonicCoeffs& coeffs, const SphereGrid& grid) {
  const int L = coeffs.degree();
  const auto nL = static_cast<std::size_t>(L + 1);
  const AssociatedLegendreTable table(L);
  const auto& rings = grid.rings();
  std::vector<std::size_t> offsets(rings.size() + 1, 0);
  for (std::size_t r = 0; r < rings.size(); ++r) offsets[r + 1] = offsets[r] + rings[r].phi.size();
  std::vector<double> out(grid.size());
  parallel_for(rings.size(), [&](std::size_t r) {
    const Ring& ring = rings[r];
    std::vector<double> p(table.size()), am(nL, 0.0), bm(nL, 0.0), cm(nL), sm(nL);
    table.evaluate(ring.t, p);
    for (int m = 0; m <= L; ++m) {
      double a = 0.0, b = 0.0;
      for (int k = m; k <= L; ++k) {
        const double pk = p[AssociatedLegendreTable::index(k, m)];
        a += coeffs(k, m) * pk;
        if (m > 0) b += coeffs(k, -m) * pk;
      }
      am[static_cast<std::size_t>(m)] = (m == 0) ? a : kSqrt2 * a;
      bm[static_cast<std::size_t>(m)] = kSqrt2 * b;
    }
    for (std::size_t j = 0; j < ring.phi.size(); ++j) {
      trig_values(L, std::cos(ring.phi[j]), std::sin(ring.phi[j]), cm, sm);
      double v = am[0];
      for (std::size_t m = 1; m < nL; ++m) v += am[m] * cm[m] + bm[m] * sm[m];
      out[offsets[r] + j] = v;
    }
  });
  return out;
}

MultiplierTable cosine_multipliers(int L) {
  if (L < 0) throw InvalidArgument("cosine_multipliers: negative degree");
  std::vector<double> lambda(static_cast<std::size_t>(L + 1), 0.0);
  for (int k = 0; k <= L; k += 2) {
    const auto n = static_cast<std::size_t>(k / 2 + 2);
    double sum = 0.0;
    for (const auto& [lo, hi] : {std::pair{-1.0, 0.0}, std::pair{0.0, 1.0}}) {
      const QuadratureRule g = gauss_legendre_rule(n, lo, hi);
      for (std::size_t i = 0; i < n; ++i) sum += g.weights[i] * std::abs(g.nodes[i]) * legendre_P(k, g.nodes[i]);
    }
    lambda[static_cast<std::size_t>(k)] = 0.5 * sum;
  }
  return MultiplierTable(std::move(lambda));
}

ZonalProfile project_zonal(const HarmonicCoeffs& coeffs, const Vec3& u) {
  require_unit(u, "project_zonal");
  const int L = coeffs.degree();
  const AssociatedLegendreTable table(L);
  std::vector<double> y(coeffs.data().size());
  sh_values(table, u, y);
  ZonalProfile profile;
  profile.axis = u;
  profile.legendre.assign(static_cast<std::size_t>(L + 1), 0.0);
  for (int k = 0; k <= L; ++k) {
    double a = 0.0;
    for (int m = -k; m <= k; ++m) a += coeffs(k, m) * y[static_cast<std::size_t>(sh_index(k, m))];
    profile.legendre[static_cast<std::size_t>(k)] = a;
  }
  return profile;
}

HarmonicCoeffs zonal_to_harmonic(const ZonalProfile& profile) {
  const int L = profile.degree();
  HarmonicCoeffs out(std::max(L, 0));
  if (L < 0) return out;
  const AssociatedLegendreTable table(L);
  std::vector<double> y(out.data().size());
  sh_values(table, profile.axis, y);
  for (int k = 0; k <= L; ++k) {
    const double a = profile.legendre[static_cast<std::size_t>(k)] / (2.0 * k + 1.0);
    for (int m = -k; m <= k; ++m) out(k, m) = a * y[static_cast<std::size_t>(sh_index(k, m))];
  }
  return out;
}

}  // namespace spinlab
