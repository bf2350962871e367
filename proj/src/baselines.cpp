#include "snake/baselines.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "snake/rng.hpp"

namespace snake {

IncidenceOperator::IncidenceOperator(const Graph& g)
    : edges_(g.edges()), num_nodes_(g.num_nodes()) {}

void IncidenceOperator::apply_d(const Eigen::VectorXd& x, Eigen::VectorXd& z) const {
  z.resize(static_cast<Eigen::Index>(edges_.size()));
  for (std::size_t e = 0; e < edges_.size(); ++e)
    z[static_cast<Eigen::Index>(e)] = x[edges_[e].first] - x[edges_[e].second];
}

void IncidenceOperator::apply_dt(const Eigen::VectorXd& z, Eigen::VectorXd& x) const {
  x.setZero(num_nodes_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const double v = z[static_cast<Eigen::Index>(e)];
    x[edges_[e].first] += v;
    x[edges_[e].second] -= v;
  }
}

double IncidenceOperator::laplacian_norm(int iterations) const {
  Rng rng(0x9DD0C9u);
  Eigen::VectorXd v(num_nodes_);
  for (int i = 0; i < num_nodes_; ++i) v[i] = rng.next_gaussian();
  v.normalize();
  Eigen::VectorXd z, w;
  double norm = 0.0;
  for (int it = 0; it < iterations; ++it) {
    apply_d(v, z);
    apply_dt(z, w);
    norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return norm;
}

PgDualResult pg_dual_tv(const Graph& g, const Eigen::VectorXd& y, double lambda,
                        long max_iters, double tol, const EdgeWeights* weights,
                        long eval_every) {
  if (!(lambda > 0.0)) throw std::invalid_argument("pg_dual_tv: lambda must be positive");
  if (y.size() != g.num_nodes())
    throw std::invalid_argument("pg_dual_tv: signal length does not match graph");
  if (weights && weights->values.size() != static_cast<std::size_t>(g.num_edges()))
    throw std::invalid_argument("pg_dual_tv: weight count does not match edge count");

  const IncidenceOperator incidence(g);
  const std::int64_t m = incidence.num_edges();
  Eigen::VectorXd bound(m);
  for (std::int64_t e = 0; e < m; ++e)
    bound[e] = lambda * (weights ? weights->values[static_cast<std::size_t>(e)] : 1.0);

  const double lap_norm = incidence.laplacian_norm();
  const double step = 1.0 / std::max(lap_norm, 1e-12);

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  PgDualResult result;
  result.z.setZero(m);
  Eigen::VectorXd x, diff;
  for (long it = 0; it <= max_iters; ++it) {
    incidence.apply_dt(result.z, x);
    x = y - x;
    incidence.apply_d(x, diff);

    double gap = 0.0;
    for (std::int64_t e = 0; e < m; ++e)
      gap += bound[e] * std::abs(diff[e]) - result.z[e] * diff[e];
    result.gap = gap;
    result.iterations = it;

    if (it % eval_every == 0 || gap <= tol || it == max_iters) {
      double tv = 0.0;
      for (std::int64_t e = 0; e < m; ++e) tv += bound[e] * std::abs(diff[e]);
      const double primal = 0.5 * (x - y).squaredNorm() + tv;
      const double t = elapsed();
      result.trace.push_back({it, t, t, primal});
    }
    if (gap <= tol) {
      result.converged = true;
      break;
    }
    if (it == max_iters) break;

    // z <- clip(z + step * Dx); the dual gradient is D(D'z - y) = -Dx.
    result.z += step * diff;
    result.z = result.z.cwiseMin(bound).cwiseMax(-bound);
  }
  incidence.apply_dt(result.z, x);
  result.x = y - x;
  return result;
}

CgResult conjugate_gradient(const LinearOperator& apply_a, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& x0, double tol, long max_iters,
                            const TraceMetric& metric, long eval_every) {
  if (x0.size() != b.size())
    throw std::invalid_argument("conjugate_gradient: dimension mismatch");

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  double metric_seconds = 0.0;
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  CgResult result;
  result.x = x0;
  Eigen::VectorXd ap;
  apply_a(result.x, ap);
  Eigen::VectorXd r = b - ap;
  Eigen::VectorXd p = r;
  double rs = r.squaredNorm();
  const double b_norm = b.norm();
  const double threshold = tol * (b_norm > 0.0 ? b_norm : 1.0);

  const auto record = [&](long it, double fallback) {
    const double wall = elapsed();
    const auto m0 = clock::now();
    const double value = metric ? metric(result.x) : fallback;
    metric_seconds += std::chrono::duration<double>(clock::now() - m0).count();
    result.trace.push_back({it, wall, wall - metric_seconds, value});
  };

  record(0, std::sqrt(rs));
  if (std::sqrt(rs) <= threshold) {
    result.converged = true;
    result.residual_norm = std::sqrt(rs);
    return result;
  }

  for (long it = 1; it <= max_iters; ++it) {
    apply_a(p, ap);
    const double curvature = p.dot(ap);
    if (curvature <= 0.0) {
      result.breakdown = true;
      result.iterations = it - 1;
      break;
    }
    const double alpha = rs / curvature;
    result.x += alpha * p;
    r -= alpha * ap;
    const double rs_next = r.squaredNorm();
    result.iterations = it;
    if (it % eval_every == 0 || std::sqrt(rs_next) <= threshold || it == max_iters)
      record(it, std::sqrt(rs_next));
    if (std::sqrt(rs_next) <= threshold) {
      result.converged = true;
      break;
    }
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }

  apply_a(result.x, ap);
  result.residual_norm = (b - ap).norm();
  return result;
}

}  // namespace snake
