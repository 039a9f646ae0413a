#include "spinlab/zonoid.hpp"
#include "spinlab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace spinlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::zonoid_consistent: return "zonoid-consistent";
    case Verdict::non_zonoid: return "non-zonoid";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void CertifyParams::validate() const {
  if (band_limit < 0 || band_limit > kMaxBandLimit) throw InvalidArgument("band_limit must lie in [0, 256]");
  if (r_ladder.empty()) throw InvalidArgument("r_ladder must not be empty");
  for (double r : r_ladder) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("r_ladder entries must lie in (0, 1)");
  }
  if (!(eps_pos > 0.0) || !(eps_neg > eps_pos)) throw InvalidArgument("need 0 < eps_pos < eps_neg");
  if (t_grid < 3) throw InvalidArgument("t_grid must be >= 3");
  if (n_theta < 1 || n_phi < 2) throw InvalidArgument("grid sizes must be positive");
  if (panel_points < 1) throw InvalidArgument("panel_points must be >= 1");
  if (!(guard_threshold > 0.0)) throw InvalidArgument("guard_threshold must be > 0");
}

ZonalProfile generating_profile(const ZonalProfile& support_profile, double guard_threshold) {
  const double scale = max_coefficient(support_profile);
  const double odd = odd_part_magnitude(support_profile);
  if (odd > kParityTol * scale) {
    throw IllPosedInput("generating_profile: profile has odd content " + std::to_string(odd));
  }
  const int L = support_profile.degree();
  const MultiplierTable lambda = cosine_multipliers(std::max(L, 0));
  ZonalProfile out;
  out.axis = support_profile.axis;
  out.kind = ProfileKind::generating;
  out.legendre.assign(support_profile.legendre.size(), 0.0);
  for (int k = 0; k <= L; k += 2) {
    const double b = support_profile.legendre[static_cast<std::size_t>(k)];
    if (std::abs(lambda[k]) > guard_threshold) {
      out.legendre[static_cast<std::size_t>(k)] = b / lambda[k];
    } else if (std::abs(b) > kParityTol * scale) {
      throw IllPosedInput("generating_profile: nonzero input at suppressed degree " + std::to_string(k));
    }
  }
  return out;
}

namespace {

// Minimizes f on [a, b] by golden-section search.
double golden_min(const std::function<double(double)>& f, double a, double b, double& fmin) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 80 && b - a > 1e-15; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  const double x = f1 <= f2 ? x1 : x2;
  fmin = std::min(f1, f2);
  return x;
}

struct Extremes {
  double min, argmin, max;
};

// Min (refined) and max of f over a uniform grid on [lo, hi].
Extremes scan_extremes(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<double> values(static_cast<std::size_t>(n));
  auto at = [&](int i) { return lo + (hi - lo) * i / (n - 1); };
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = f(at(i));
  const auto imin = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  Extremes e{values[static_cast<std::size_t>(imin)], at(imin),
             *std::max_element(values.begin(), values.end())};
  double fr = 0.0;
  const double xr = golden_min(f, at(std::max(imin - 1, 0)), at(std::min(imin + 1, n - 1)), fr);
  if (fr < e.min) {
    e.min = fr;
    e.argmin = xr;
  }
  return e;
}

double even_kernel_value(double r, int L, double s) {
  double p0 = 1.0, p1 = s, sum = 1.0, rk = 1.0;
  for (int k = 2; k <= L; ++k) {
    const double p2 = ((2.0 * k - 1.0) * s * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
    if (k % 2 == 0) {
      rk *= r * r;
      sum += (2.0 * k + 1.0) * rk * p2;
    }
  }
  return sum;
}

void finish_level(LevelStats& s, double mass, double r) {
  s.scale = std::max(std::abs(s.max_density), std::abs(s.min_density));
  s.floor = std::max(mass, 0.0) * std::min(0.0, truncated_kernel_min(r, s.band_limit));
  s.margin = s.min_density - s.floor;
}

LevelStats zonal_level(const ZonalProfile& generating, int level, double r, int t_grid) {
  std::vector<double> a(static_cast<std::size_t>(level + 1), 0.0);
  double rk = 1.0;
  for (int k = 0; k <= level && k <= generating.degree(); ++k, rk *= r) {
    a[static_cast<std::size_t>(k)] = rk * generating.legendre[static_cast<std::size_t>(k)];
  }
  const Extremes e = scan_extremes([&](double t) { return legendre_series(a, t); }, -1.0, 1.0, t_grid);
  LevelStats s;
  s.band_limit = level;
  s.min_density = e.min;
  s.max_density = e.max;
  s.argmin_t = e.argmin;
  const OrbitFrame frame = orbit_frame(generating.axis);
  s.argmin_point = e.argmin * frame.axis + std::sqrt(std::max(0.0, 1.0 - e.argmin * e.argmin)) * frame.e1;
  finish_level(s, generating.legendre.empty() ? 0.0 : generating.legendre[0], r);
  return s;
}

RungResult classify(double r, const LevelStats& base, const LevelStats& doubled, const CertifyParams& p) {
  RungResult rung;
  rung.r = r;
  rung.base = base;
  rung.doubled = doubled;
  rung.consistent = base.margin >= -p.eps_pos * base.scale && doubled.margin >= -p.eps_pos * doubled.scale;
  const bool neg_base = base.margin <= -p.eps_neg * base.scale;
  const bool neg_doubled = doubled.margin <= -p.eps_neg * doubled.scale;
  if (neg_base && neg_doubled) {
    const double ratio = doubled.margin / base.margin;
    rung.negative_stable = ratio >= 0.5 && ratio <= 2.0;
  }
  return rung;
}

Verdict combine(const std::vector<RungResult>& rungs) {
  if (std::any_of(rungs.begin(), rungs.end(), [](const RungResult& r) { return r.negative_stable; })) {
    return Verdict::non_zonoid;
  }
  if (std::all_of(rungs.begin(), rungs.end(), [](const RungResult& r) { return r.consistent; })) {
    return Verdict::zonoid_consistent;
  }
  return Verdict::inconclusive;
}

}  // namespace

double truncated_kernel_min(double r, int L) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("truncated_kernel_min: r must lie in (0, 1)");
  return scan_extremes([&](double s) { return even_kernel_value(r, L, s); }, 0.0, 1.0, 2001).min;
}

Certificate certify_zonal(const ZonalProfile& support_profile, const CertifyParams& params) {
  params.validate();
  Certificate cert;
  cert.params = params;
  const int L = params.band_limit;
  if (max_coefficient(support_profile) < 1e-14) {
    cert.zero_body = true;
    return cert;
  }
  // Profiles of lower degree are exactly band-limited; padding is exact.
  const ZonalProfile g_base = generating_profile(with_degree(support_profile, L), params.guard_threshold);
  const ZonalProfile g_doubled = generating_profile(with_degree(support_profile, 2 * L), params.guard_threshold);
  for (double r : params.r_ladder) {
    cert.rungs.push_back(classify(r, zonal_level(g_base, L, r, params.t_grid),
                                  zonal_level(g_doubled, 2 * L, r, params.t_grid), params));
  }
  cert.verdict = combine(cert.rungs);
  return cert;
}

Certificate certify_body(const Body& body, const CertifyParams& params) {
  params.validate();
  require_even(body, "certify_body");
  const int L = params.band_limit;
  if (2 * L > kMaxBandLimit) throw InvalidArgument("certify_body: band_limit must be <= 128 (doubling check)");
  Certificate cert;
  cert.params = params;
  cert.label = body.label();

  const HarmonicCoeffs h_doubled = expand(body, 2 * L);
  if (h_doubled.max_abs() < 1e-14) {
    cert.zero_body = true;
    return cert;
  }
  const GeneratingCoeffs rho_doubled = inverse_cosine_spectral(h_doubled, params.guard_threshold);
  const GeneratingCoeffs rho_base = inverse_cosine_spectral(h_doubled.with_degree(L), params.guard_threshold);

  auto level_stats = [&](const HarmonicCoeffs& rho, double r) {
    const int level = rho.degree();
    const int nt = std::max(params.n_theta, level + 2);
    const SphereGrid grid = product_sphere_grid(nt, std::max(params.n_phi, 2 * nt));
    const std::vector<double> density = synthesize(poisson_smooth(rho, r), grid);
    const auto [lo, hi] = std::minmax_element(density.begin(), density.end());
    LevelStats s;
    s.band_limit = level;
    s.min_density = *lo;
    s.max_density = *hi;
    s.argmin_point = grid.nodes()[static_cast<std::size_t>(lo - density.begin())];
    s.argmin_t = s.argmin_point.z();
    finish_level(s, rho(0, 0), r);
    return s;
  };
  for (double r : params.r_ladder) {
    cert.rungs.push_back(classify(r, level_stats(rho_base.coeffs, r), level_stats(rho_doubled.coeffs, r), params));
  }
  cert.verdict = combine(cert.rungs);
  return cert;
}

ScanReport theorem_scan(const Body& body, const std::vector<Vec3>& directions, const CertifyParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  ScanReport report;
  report.label = body.label();
  report.directions.resize(directions.size());
  const int L = params.band_limit;

  // Spin-of-generating route, shared by every direction.
  std::optional<HarmonicCoeffs> rho;
  std::optional<HarmonicCoeffs> h_doubled;
  std::string global_error;
  try {
    require_even(body, "theorem_scan");
    rho = inverse_cosine_spectral(expand(body, L), params.guard_threshold).coeffs;
    if (body.is_spectral()) h_doubled = expand(body, std::min(2 * L, kMaxBandLimit));
  } catch (const std::exception& e) {
    global_error = e.what();
  }

  parallel_for(directions.size(), [&](std::size_t i) {
    DirectionResult& result = report.directions[i];
    result.direction = directions[i];
    result.certificate.params = params;
    result.certificate.label = body.label();
    if (!global_error.empty()) {
      result.error = global_error;
      return;
    }
    try {
      require_unit(directions[i], "theorem_scan");
      ZonalProfile profile;
      if (body.is_spectral()) {
        profile = spin_spectral(*h_doubled, directions[i]);
      } else {
        SpinOptions opt;
        opt.degree = 2 * L;
        opt.panel_points = params.panel_points;
        profile = spin_orbit(body, directions[i], opt);
      }
      result.certificate = certify_zonal(profile, params);
      result.certificate.label = body.label();

      const ZonalProfile via_spin = generating_profile(with_degree(profile, L), params.guard_threshold);
      const ZonalProfile via_generating = project_zonal(*rho, directions[i]);
      double diff = 0.0;
      for (int k = 0; k <= L; ++k) {
        diff = std::max(diff, std::abs(via_spin.legendre[static_cast<std::size_t>(k)] -
                                       via_generating.legendre[static_cast<std::size_t>(k)]));
      }
      result.commutation_error = diff / std::max(1.0, max_coefficient(via_generating));
    } catch (const std::exception& e) {
      result.error = e.what();
    }
  });

  bool all_consistent = true, any_negative = false;
  for (const DirectionResult& d : report.directions) {
    report.max_commutation_error = std::max(report.max_commutation_error, d.commutation_error);
    if (!d.error.empty() || d.certificate.verdict != Verdict::zonoid_consistent) all_consistent = false;
    if (d.error.empty() && d.certificate.verdict == Verdict::non_zonoid) any_negative = true;
  }
  report.aggregate = any_negative ? Verdict::non_zonoid
                                  : (all_consistent && !directions.empty() ? Verdict::zonoid_consistent
                                                                           : Verdict::inconclusive);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace spinlab
