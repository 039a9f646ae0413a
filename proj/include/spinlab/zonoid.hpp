#pragma once

#include "spinlab/bodies.hpp"
#include "spinlab/transforms.hpp"
#include "spinlab/zonal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinlab {

enum class Verdict { zonoid_consistent, non_zonoid, inconclusive };

std::string to_string(Verdict v);

struct CertifyParams {
  int band_limit = 64;
  std::vector<double> r_ladder{0.90, 0.95, 0.99};
  double eps_pos = 1e-6;  // relative to the largest smoothed density magnitude
  double eps_neg = 1e-3;
  int t_grid = 2001;      // uniform t points for zonal minima
  int n_theta = kDefaultThetaNodes;
  int n_phi = kDefaultPhiNodes;
  int panel_points = 16;
  double guard_threshold = 1e-14;

  /// Throws InvalidArgument on out-of-range values.
  void validate() const;
};

/// Smoothed-density statistics at one band limit.
struct LevelStats {
  int band_limit = 0;
  double min_density = 0.0;
  double max_density = 0.0;
  double scale = 0.0;   // largest |density|
  double floor = 0.0;   // lowest value any positive measure of the same mass can show
  double margin = 0.0;  // min_density - floor
  double argmin_t = 0.0;
  Vec3 argmin_point = Vec3::UnitZ();
};

struct RungResult {
  double r = 0.0;
  LevelStats base;     // at the band limit
  LevelStats doubled;  // at twice the band limit
  bool consistent = false;       // base.margin >= -eps_pos * scale
  bool negative_stable = false;  // margin <= -eps_neg * scale at both levels, within a factor 2
};

/// Numerical evidence for or against positivity of a generating distribution.
struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  std::vector<RungResult> rungs;
  std::optional<double> nnls_residual;
  CertifyParams params;
  std::string label;
  bool zero_body = false;
};

/// Generating-profile Legendre coefficients g_k = b_k / lambda_k.
ZonalProfile generating_profile(const ZonalProfile& support_profile, double guard_threshold = 1e-14);

/// min over s in [-1,1] of sum_{even k <= L} (2k+1) r^k P_k(s): the band-limited
/// even Poisson kernel. A positive even measure of mass M has band-limited
/// smoothed density >= M * min(0, this) everywhere.
double truncated_kernel_min(double r, int L);

Certificate certify_zonal(const ZonalProfile& support_profile, const CertifyParams& params);

Certificate certify_body(const Body& body, const CertifyParams& params);

struct NnlsResult {
  std::vector<double> weights;
  double relative_residual = 0.0;        // sup |h - fit| / sup |h| on the fit grid
  std::vector<double> objective_trace;   // 0.5 * ||A w - h||^2 after each sweep
  int iterations = 0;
  bool converged = false;
};

/// min_{w >= 0} ||A w - b||^2 by projected coordinate descent with periodic
/// exact solves on the active set; every accepted step lowers the objective.
NnlsResult nnls_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 5000,
                      double tol = 1e-10);

/// Fit h by sum_i w_i |<x, v_i>| over the fit grid with w >= 0.
NnlsResult nnls_zonotope_fit(const Body& body, const std::vector<Vec3>& candidate_dirs,
                             const SphereGrid& fit_grid, int max_iter = 5000, double tol = 1e-10);

struct DirectionResult {
  Vec3 direction;
  Certificate certificate;
  double commutation_error = 0.0;  // generating-of-spin vs spin-of-generating, relative
  std::string error;               // empty on success
};

struct ScanReport {
  std::string label;
  std::vector<DirectionResult> directions;
  Verdict aggregate = Verdict::inconclusive;
  double max_commutation_error = 0.0;
  double wall_seconds = 0.0;
};

/// Certifies every spin of the body. Directions are processed independently
/// and reported in input order.
ScanReport theorem_scan(const Body& body, const std::vector<Vec3>& directions, const CertifyParams& params);

}  // namespace spinlab
