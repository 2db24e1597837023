#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "twsplit/graph.hpp"
#include "twsplit/lanczos.hpp"

namespace twsplit {

enum class StatisticVariant { Adjacency, Laplacian };

std::string_view to_string(StatisticVariant v);
/// Accepts "adjacency" or "laplacian"; throws InputError otherwise.
StatisticVariant parse_statistic_variant(std::string_view name);

struct TestStatistic {
  /// n^{2/3} (lambda1 - 2) for the adjacency form; the Laplacian form rescales
  /// lambda1 first (see laplacian_statistic).
  double theta = 0.0;
  /// Top eigenvalue of the centered scaled adjacency matrix, or lambda_2 of
  /// the normalized Laplacian.
  double lambda1 = 0.0;
  std::size_t n = 0;
  double p_hat = 0.0;
  StatisticVariant variant = StatisticVariant::Adjacency;
};

struct SpectralOrdering {
  Eigen::VectorXd eigenvector;
  double value = 0.0;
};

/// y = (A - P_hat) x / sqrt((n-1) p (1-p)) with P_hat = p (J - I), without
/// forming the dense matrix. Throws DegenerateError unless 0 < p_hat < 1.
Eigen::VectorXd centered_matvec(const Graph& g, double p_hat, const Eigen::VectorXd& x);

/// Largest signed eigenvalue of the centered scaled adjacency matrix and a
/// unit eigenvector.
SpectralOrdering largest_eigenvalue_centered(const Graph& g, double p_hat,
                                             const EigenSolverOptions& options = {});

/// theta = n^{2/3} (lambda1 - 2) with p_hat estimated from g.
TestStatistic adjacency_statistic(const Graph& g, const EigenSolverOptions& options = {});

/// Experimental statistic from the normalized Laplacian L = D^{-1/2} A D^{-1/2}:
/// theta = n^{2/3} (sqrt(n p / (1 - p)) (lambda_2(L) + 1/n) - 2).
/// Requires minimum degree 1.
TestStatistic laplacian_statistic(const Graph& g, const EigenSolverOptions& options = {});

TestStatistic compute_statistic(const Graph& g, StatisticVariant variant,
                                const EigenSolverOptions& options = {});

/// Second largest eigenvalue of D^{-1/2} A D^{-1/2}, deflating the known top
/// eigenvector D^{1/2} 1 / sqrt(sum d).
double laplacian_second_eigenvalue(const Graph& g, const EigenSolverOptions& options = {});

/// Wigner semicircle density (1 / 2 pi) sqrt((4 - x^2)_+).
double semicircle_density(double x);

inline constexpr std::size_t kDefaultDenseCeiling = 4000;

/// Dense (A - P_hat) / sqrt((n-1) p (1-p)).
Eigen::MatrixXd centered_dense(const Graph& g, double p_hat);

/// All eigenvalues of the centered scaled adjacency matrix, ascending.
/// Throws InputError above `max_dense` nodes.
std::vector<double> bulk_spectrum(const Graph& g, double p_hat,
                                  std::size_t max_dense = kDefaultDenseCeiling);

}  // namespace twsplit
