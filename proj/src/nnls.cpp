#include "spinlab/zonoid.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace spinlab {

namespace {

double objective(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& w) {
  return 0.5 * (A * w - b).squaredNorm();
}

// Exact least squares on the active set, pulled back to the feasible
// region along the segment from w if any component goes negative.
Eigen::VectorXd polish(const Eigen::MatrixXd& G, const Eigen::VectorXd& c, const Eigen::VectorXd& w) {
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) active.push_back(i);
  }
  if (active.empty()) return w;
  const auto n = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd Gs(n, n);
  Eigen::VectorXd cs(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    cs[a] = c[active[a]];
    for (Eigen::Index b = 0; b < n; ++b) Gs(a, b) = G(active[a], active[b]);
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(Gs);
  if (ldlt.info() != Eigen::Success) return w;
  const Eigen::VectorXd z = ldlt.solve(cs);
  if (!z.allFinite()) return w;
  double step = 1.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const double cur = w[active[a]];
    if (z[a] < 0.0) step = std::min(step, cur / (cur - z[a]));
  }
  Eigen::VectorXd out = w;
  for (Eigen::Index a = 0; a < n; ++a) {
    const double cur = w[active[a]];
    out[active[a]] = std::max(0.0, cur + step * (z[a] - cur));
  }
  return out;
}

}  // namespace

NnlsResult nnls_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter, double tol) {
  if (A.rows() != b.size()) throw InvalidArgument("nnls_solve: dimension mismatch");
  if (A.cols() == 0) throw InvalidArgument("nnls_solve: no columns");
  if (max_iter < 1 || !(tol > 0.0)) throw InvalidArgument("nnls_solve: max_iter >= 1 and tol > 0 required");

  const Eigen::MatrixXd G = A.transpose() * A;
  const Eigen::VectorXd c = A.transpose() * b;
  const Eigen::Index n = A.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = -c;  // G w - c

  NnlsResult result;
  const double f_zero = objective(A, b, w);
  double f = f_zero;
  result.objective_trace.push_back(f);
  const double tiny = 1e-300 + 1e-32 * f_zero;

  auto accept = [&](const Eigen::VectorXd& candidate) {
    const double fc = objective(A, b, candidate);
    if (fc <= f) {
      w = candidate;
      grad = G * w - c;
      f = fc;
      return true;
    }
    return false;
  };

  for (int it = 1; it <= max_iter; ++it) {
    result.iterations = it;
    const Eigen::VectorXd w_prev = w;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (G(i, i) <= 0.0) continue;
      const double updated = std::max(0.0, w[i] - grad[i] / G(i, i));
      const double delta = updated - w[i];
      if (delta != 0.0) {
        w[i] = updated;
        grad += delta * G.col(i);
      }
    }
    const double f_new = objective(A, b, w);
    if (f_new > f) {
      // Rounding-level increase: keep the previous iterate and stop.
      w = w_prev;
      grad = G * w - c;
      break;
    }
    const double f_before = f;
    f = f_new;
    bool small = (f_before - f) <= tol * std::max(f_before, tiny) || f <= tiny;
    if (it % 10 == 0 || small) {
      const double f_pre = f;
      if (accept(polish(G, c, w)) && f < f_pre * (1.0 - tol)) small = false;
    }
    result.objective_trace.push_back(f);
    if (small) {
      result.converged = true;
      break;
    }
  }

  result.weights.assign(w.data(), w.data() + n);
  const double bmax = b.cwiseAbs().maxCoeff();
  result.relative_residual = bmax > 0.0 ? (A * w - b).cwiseAbs().maxCoeff() / bmax : 0.0;
  return result;
}

NnlsResult nnls_zonotope_fit(const Body& body, const std::vector<Vec3>& candidate_dirs, const SphereGrid& fit_grid,
                             int max_iter, double tol) {
  if (candidate_dirs.empty()) throw InvalidArgument("nnls_zonotope_fit: no candidate directions");
  const auto m = static_cast<Eigen::Index>(fit_grid.size());
  const auto n = static_cast<Eigen::Index>(candidate_dirs.size());
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd b(m);
  const auto nodes = fit_grid.nodes();
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vec3& x = nodes[static_cast<std::size_t>(j)];
    b[j] = support_value(body, x);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(j, i) = std::abs(x.dot(candidate_dirs[static_cast<std::size_t>(i)].normalized()));
    }
  }
  return nnls_solve(A, b, max_iter, tol);
}

}  // namespace spinlab
