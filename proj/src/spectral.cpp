#include "twsplit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "twsplit/error.hpp"

namespace twsplit {

std::string_view to_string(StatisticVariant v) {
  return v == StatisticVariant::Adjacency ? "adjacency" : "laplacian";
}

StatisticVariant parse_statistic_variant(std::string_view name) {
  if (name == "adjacency") return StatisticVariant::Adjacency;
  if (name == "laplacian") return StatisticVariant::Laplacian;
  throw InputError("unknown statistic '" + std::string(name) + "' (expected adjacency or laplacian)");
}

namespace {

void require_nondegenerate(double p_hat) {
  if (!(p_hat > 0.0 && p_hat < 1.0)) {
    throw DegenerateError("edge density " + std::to_string(p_hat) +
                          " leaves no variance to scale by; no test is possible");
  }
}

double centered_scale(std::size_t n, double p_hat) {
  return std::sqrt((static_cast<double>(n) - 1.0) * p_hat * (1.0 - p_hat));
}

void apply_centered(const Graph& g, double p_hat, double inv_scale, const Eigen::VectorXd& x,
                    Eigen::VectorXd& y) {
  const double shift = p_hat * x.sum();
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    double acc = 0.0;
    for (NodeIndex j : g.neighbors(i)) acc += x(j);
    y(i) = (acc - shift + p_hat * x(i)) * inv_scale;
  }
}

}  // namespace

Eigen::VectorXd centered_matvec(const Graph& g, double p_hat, const Eigen::VectorXd& x) {
  require_nondegenerate(p_hat);
  if (static_cast<std::size_t>(x.size()) != g.num_nodes()) {
    throw InputError("vector length does not match node count");
  }
  Eigen::VectorXd y(x.size());
  apply_centered(g, p_hat, 1.0 / centered_scale(g.num_nodes(), p_hat), x, y);
  return y;
}

SpectralOrdering largest_eigenvalue_centered(const Graph& g, double p_hat,
                                             const EigenSolverOptions& options) {
  require_nondegenerate(p_hat);
  if (g.num_nodes() < 2) throw DegenerateError("need at least two nodes");
  const double inv_scale = 1.0 / centered_scale(g.num_nodes(), p_hat);
  const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    apply_centered(g, p_hat, inv_scale, x, y);
  };
  EigenPair pair = largest_eigenpair(g.num_nodes(), op, options);
  return {std::move(pair.vector), pair.value};
}

TestStatistic adjacency_statistic(const Graph& g, const EigenSolverOptions& options) {
  const double p_hat = estimate_edge_density(g);
  const SpectralOrdering top = largest_eigenvalue_centered(g, p_hat, options);
  const double n = static_cast<double>(g.num_nodes());
  return {std::pow(n, 2.0 / 3.0) * (top.value - 2.0), top.value, g.num_nodes(), p_hat,
          StatisticVariant::Adjacency};
}

double laplacian_second_eigenvalue(const Graph& g, const EigenSolverOptions& options) {
  const std::size_t n = g.num_nodes();
  Eigen::VectorXd inv_sqrt_degree(static_cast<Eigen::Index>(n));
  Eigen::VectorXd top(static_cast<Eigen::Index>(n));
  for (NodeIndex i = 0; i < n; ++i) {
    const auto d = static_cast<double>(g.degree(i));
    if (d == 0.0) {
      throw DegenerateError("node " + g.label(i) +
                            " has degree zero; remove isolated nodes before the Laplacian test");
    }
    inv_sqrt_degree(i) = 1.0 / std::sqrt(d);
    top(i) = std::sqrt(d);
  }
  top.normalize();
  // L has spectrum in [-1, 1] with top eigenvector `top` at 1. Subtracting
  // 2 top top^T moves that eigenvalue to -1, so the largest eigenvalue of the
  // deflated operator is lambda_2(L) whatever its sign.
  const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (NodeIndex i = 0; i < n; ++i) {
      double acc = 0.0;
      for (NodeIndex j : g.neighbors(i)) acc += inv_sqrt_degree(j) * x(j);
      y(i) = inv_sqrt_degree(i) * acc;
    }
    y.noalias() -= 2.0 * top.dot(x) * top;
  };
  return largest_eigenpair(n, op, options).value;
}

TestStatistic laplacian_statistic(const Graph& g, const EigenSolverOptions& options) {
  const double p_hat = estimate_edge_density(g);
  require_nondegenerate(p_hat);
  const double lambda2 = laplacian_second_eigenvalue(g, options);
  const double n = static_cast<double>(g.num_nodes());
  const double scaled = std::sqrt(n * p_hat / (1.0 - p_hat)) * (lambda2 + 1.0 / n);
  return {std::pow(n, 2.0 / 3.0) * (scaled - 2.0), lambda2, g.num_nodes(), p_hat,
          StatisticVariant::Laplacian};
}

TestStatistic compute_statistic(const Graph& g, StatisticVariant variant,
                                const EigenSolverOptions& options) {
  return variant == StatisticVariant::Adjacency ? adjacency_statistic(g, options)
                                                : laplacian_statistic(g, options);
}

double semicircle_density(double x) {
  const double r = 4.0 - x * x;
  return r > 0.0 ? std::sqrt(r) / (2.0 * std::numbers::pi) : 0.0;
}

Eigen::MatrixXd centered_dense(const Graph& g, double p_hat) {
  require_nondegenerate(p_hat);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, -p_hat);
  m.diagonal().setZero();
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    for (NodeIndex j : g.neighbors(i)) m(i, j) += 1.0;
  }
  return m / centered_scale(g.num_nodes(), p_hat);
}

std::vector<double> bulk_spectrum(const Graph& g, double p_hat, std::size_t max_dense) {
  if (g.num_nodes() > max_dense) {
    throw InputError("bulk spectrum of " + std::to_string(g.num_nodes()) +
                     " nodes exceeds the dense ceiling of " + std::to_string(max_dense) +
                     "; subsample the graph or raise the ceiling");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered_dense(g, p_hat),
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

}  // namespace twsplit
