#include "spinlab/run.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/transforms.hpp"
#include "spinlab/zonoid.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

namespace spinlab {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

CertifyParams certify_params(const ExperimentConfig& c) {
  CertifyParams p;
  p.band_limit = c.band_limit;
  p.r_ladder = c.r_ladder;
  p.eps_pos = c.eps_pos;
  p.eps_neg = c.eps_neg;
  p.t_grid = c.t_grid;
  p.n_theta = c.n_theta;
  p.n_phi = c.n_phi;
  p.panel_points = c.panel_points;
  p.guard_threshold = c.guard_threshold;
  return p;
}

json level_json(const LevelStats& s) {
  return {{"band_limit", s.band_limit}, {"min_density", s.min_density}, {"max_density", s.max_density},
          {"floor", s.floor},           {"margin", s.margin},           {"argmin_t", s.argmin_t},
          {"argmin_point", vec_json(s.argmin_point)}};
}

json certificate_json(const Certificate& cert) {
  json rungs = json::array();
  for (const RungResult& r : cert.rungs) {
    rungs.push_back({{"r", r.r},
                     {"consistent", r.consistent},
                     {"negative_stable", r.negative_stable},
                     {"base", level_json(r.base)},
                     {"doubled", level_json(r.doubled)}});
  }
  json j = {{"verdict", to_string(cert.verdict)}, {"zero_body", cert.zero_body}, {"rungs", rungs}};
  if (cert.nnls_residual) j["nnls_residual"] = *cert.nnls_residual;
  return j;
}

json coeff_summary(const HarmonicCoeffs& c) {
  json entries = json::array();
  for (int k = 0; k <= c.degree(); ++k) {
    for (int m = -k; m <= k; ++m) {
      if (c(k, m) != 0.0) entries.push_back(json::array({k, m, c(k, m)}));
    }
  }
  return entries;
}

ZonalProfile spin_for(const Body& body, const ExperimentConfig& c) {
  if (body.is_spectral()) {
    ZonalProfile p = spin_spectral(expand(body, c.band_limit), c.axis);
    p.sample_t = gauss_legendre_rule(static_cast<std::size_t>(c.t_nodes)).nodes;
    p.sample_value = zonal_eval(p, p.sample_t);
    return p;
  }
  SpinOptions opt;
  opt.degree = c.band_limit;
  opt.t_nodes = c.t_nodes;
  opt.panel_points = c.panel_points;
  return spin_orbit(body, c.axis, opt);
}

// Zonal projection of full coefficients about the axis, sampled at Gauss nodes.
ZonalProfile zonal_view(const HarmonicCoeffs& coeffs, const ExperimentConfig& c, ProfileKind kind) {
  ZonalProfile p = project_zonal(coeffs, c.axis);
  p.kind = kind;
  p.sample_t = gauss_legendre_rule(static_cast<std::size_t>(c.t_nodes)).nodes;
  p.sample_value = zonal_eval(p, p.sample_t);
  return p;
}

std::string scan_csv(const ScanReport& report, const std::vector<double>& r_ladder) {
  std::ostringstream out;
  out << "u1,u2,u3";
  for (double r : r_ladder) out << ",min_density_r" << format_double(r);
  for (double r : r_ladder) out << ",margin_r" << format_double(r);
  out << ",commutation_error,verdict\n";
  for (const DirectionResult& d : report.directions) {
    out << format_double(d.direction.x()) << ',' << format_double(d.direction.y()) << ','
        << format_double(d.direction.z());
    const auto& rungs = d.certificate.rungs;
    for (std::size_t i = 0; i < r_ladder.size(); ++i) {
      out << ',' << (i < rungs.size() ? format_double(rungs[i].base.min_density) : "nan");
    }
    for (std::size_t i = 0; i < r_ladder.size(); ++i) {
      out << ',' << (i < rungs.size() ? format_double(rungs[i].base.margin) : "nan");
    }
    out << ',' << format_double(d.commutation_error) << ','
        << (d.error.empty() ? to_string(d.certificate.verdict) : "error") << '\n';
  }
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string profile_csv(const ZonalProfile& profile, const std::vector<double>& r_ladder) {
  std::vector<double> t = profile.sample_t;
  std::vector<double> values = profile.sample_value;
  if (t.empty()) {
    t = gauss_legendre_rule(64).nodes;
    values = zonal_eval(profile, t);
  }
  std::vector<std::vector<double>> smoothed;
  for (double r : r_ladder) smoothed.push_back(zonal_eval(poisson_smooth(profile, r), t));

  std::ostringstream out;
  out << "t,value";
  for (double r : r_ladder) out << ",smoothed_r" << format_double(r);
  out << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << format_double(t[i]) << ',' << format_double(values[i]);
    for (const auto& col : smoothed) out << ',' << format_double(col[i]);
    out << '\n';
  }
  return out.str();
}

void emit_profile_csv(const ZonalProfile& profile, const std::vector<double>& r_ladder, const std::string& path) {
  write_text(path, profile_csv(profile, r_ladder));
}

ReportBundle run(const ExperimentConfig& c) {
  if (!c.body) throw ConfigError("config: no body");
  const auto start = std::chrono::steady_clock::now();
  const Body& body = *c.body;
  ReportBundle bundle;
  json result;

  if (c.command == "spin") {
    const ZonalProfile p = spin_for(body, c);
    result = {{"axis", vec_json(c.axis)},
              {"pole_value", value_at_pole(p)},
              {"legendre", p.legendre},
              {"odd_part", odd_part_magnitude(p)}};
    bundle.profile_csv = profile_csv(p, c.r_ladder);
  } else if (c.command == "cosine") {
    const HarmonicCoeffs out = cosine_spectral(expand(body, c.band_limit));
    result = {{"coeffs", coeff_summary(out)}, {"max_abs", out.max_abs()}};
    bundle.profile_csv = profile_csv(zonal_view(out, c, ProfileKind::support), c.r_ladder);
  } else if (c.command == "invert") {
    const GeneratingCoeffs g = inverse_cosine_spectral(expand(body, c.band_limit), c.guard_threshold);
    const std::vector<double> density = synthesize(g.coeffs, product_sphere_grid(c.n_theta, c.n_phi));
    const auto [lo, hi] = std::minmax_element(density.begin(), density.end());
    result = {{"coeffs", coeff_summary(g.coeffs)},
              {"suppressed_degrees", g.suppressed_degrees},
              {"min_density", *lo},
              {"max_density", *hi}};
    bundle.profile_csv = profile_csv(zonal_view(g.coeffs, c, ProfileKind::generating), c.r_ladder);
  } else if (c.command == "certify") {
    Certificate cert = certify_body(body, certify_params(c));
    const NnlsResult fit = nnls_zonotope_fit(body, fibonacci_directions(static_cast<std::size_t>(c.candidates), true),
                                             product_sphere_grid(32, 64), c.max_iter, c.tol);
    cert.nnls_residual = fit.relative_residual;
    result = certificate_json(cert);
  } else if (c.command == "scan") {
    const ScanReport report =
        theorem_scan(body, fibonacci_directions(static_cast<std::size_t>(c.directions), c.hemisphere),
                     certify_params(c));
    json bad = json::array();
    json errors = json::array();
    for (const DirectionResult& d : report.directions) {
      if (!d.error.empty()) {
        errors.push_back({{"direction", vec_json(d.direction)}, {"error", d.error}});
      } else if (d.certificate.verdict == Verdict::non_zonoid) {
        double worst = 0.0;
        for (const RungResult& r : d.certificate.rungs) worst = std::min(worst, r.base.margin);
        bad.push_back({{"direction", vec_json(d.direction)}, {"worst_margin", worst}});
      }
    }
    result = {{"aggregate", to_string(report.aggregate)},
              {"directions", report.directions.size()},
              {"non_zonoid_directions", bad},
              {"errors", errors},
              {"max_commutation_error", report.max_commutation_error},
              {"scan_seconds", report.wall_seconds}};
    bundle.scan_csv = scan_csv(report, c.r_ladder);
  } else if (c.command == "fit") {
    const NnlsResult fit = nnls_zonotope_fit(body, fibonacci_directions(static_cast<std::size_t>(c.candidates), true),
                                             product_sphere_grid(32, 64), c.max_iter, c.tol);
    std::size_t support = 0;
    for (double w : fit.weights) support += w > 0.0 ? 1 : 0;
    result = {{"relative_residual", fit.relative_residual},
              {"iterations", fit.iterations},
              {"converged", fit.converged},
              {"final_objective", fit.objective_trace.back()},
              {"active_candidates", support},
              {"weights", fit.weights}};
  } else {
    throw ConfigError("unknown command '" + c.command + "'");
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json summary = {{"command", c.command},
                  {"body", {{"label", body.label()}, {"type", body.type_name()}}},
                  {"result", result},
                  {"metadata",
                   {{"version", kVersion},
                    {"band_limit", c.band_limit},
                    {"n_theta", c.n_theta},
                    {"n_phi", c.n_phi},
                    {"r_ladder", c.r_ladder},
                    {"eps_pos", c.eps_pos},
                    {"eps_neg", c.eps_neg},
                    {"guard_threshold", c.guard_threshold},
                    {"seed", c.seed},
                    {"threads", thread_count()},
                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                  std::to_string(EIGEN_MINOR_VERSION)},
                    {"wall_seconds", wall}}}};
  bundle.summary_json = summary.dump(2) + "\n";
  return bundle;
}

void write_bundle(const ReportBundle& bundle, const std::string& prefix) {
  write_text(prefix + ".json", bundle.summary_json);
  if (!bundle.profile_csv.empty()) write_text(prefix + "_profile.csv", bundle.profile_csv);
  if (!bundle.scan_csv.empty()) write_text(prefix + "_scan.csv", bundle.scan_csv);
}

}  // namespace spinlab
