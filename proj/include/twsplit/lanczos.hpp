#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace twsplit {

struct EigenSolverOptions {
  /// Bound on the residual norm of the returned pair, which bounds the
  /// eigenvalue error.
  double tolerance = 1e-9;
  /// Total matrix-vector products allowed; 0 means 10 * n.
  std::size_t max_iterations = 0;
  /// Problems of at most this size are solved densely.
  std::size_t dense_threshold = 64;
  /// Krylov basis size before an explicit restart.
  std::size_t krylov_dimension = 300;
  std::uint64_t start_seed = 0x4c616e637a6f73ULL;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  std::size_t iterations = 0;
};

/// y = M x for a symmetric operator M.
using LinearOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

/// Largest (signed) eigenvalue of a symmetric operator and a unit eigenvector.
/// Lanczos with full reorthogonalization, explicit restarts, and locking of
/// invariant subspaces on breakdown; dense for n <= dense_threshold.
/// Throws SolverError carrying the best estimate when out of iterations.
EigenPair largest_eigenpair(std::size_t n, const LinearOperator& op,
                            const EigenSolverOptions& options = {});

/// Applies `op` to the unit vectors to form the dense matrix.
Eigen::MatrixXd materialize(std::size_t n, const LinearOperator& op);

/// Largest eigenpair of a symmetric tridiagonal matrix (diag, offdiag) via
/// Sturm bisection and inverse iteration. Exposed for testing.
EigenPair tridiagonal_largest(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag);

}  // namespace twsplit
