#include "twsplit/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "twsplit/error.hpp"
#include "twsplit/rng.hpp"

namespace twsplit {

namespace {

// Number of eigenvalues of the tridiagonal matrix strictly below x.
std::size_t sturm_count_below(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() * 1e10;
  std::size_t count = 0;
  double d = a(0) - x;
  for (Eigen::Index i = 0;; ++i) {
    if (d == 0.0) d = -kTiny;
    if (d < 0.0) ++count;
    if (i + 1 == a.size()) break;
    d = a(i + 1) - x - b(i) * b(i) / d;
  }
  return count;
}

// Solves (T - shift I) x = rhs in place with partial pivoting.
void tridiagonal_solve(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double shift,
                       double pivot_floor, Eigen::VectorXd& rhs) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd d = a.array() - shift;
  if (n == 1) {
    rhs(0) /= (d(0) == 0.0 ? pivot_floor : d(0));
    return;
  }
  Eigen::VectorXd dl = b;
  Eigen::VectorXd du = b;
  Eigen::VectorXd du2 = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 2, 1));
  std::vector<char> swapped(static_cast<std::size_t>(n - 1), 0);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(d(i)) >= std::abs(dl(i))) {
      if (d(i) == 0.0) d(i) = pivot_floor;
      const double fact = dl(i) / d(i);
      dl(i) = fact;
      d(i + 1) -= fact * du(i);
    } else {
      const double fact = d(i) / dl(i);
      d(i) = dl(i);
      dl(i) = fact;
      const double temp = du(i);
      du(i) = d(i + 1);
      d(i + 1) = temp - fact * d(i + 1);
      if (i + 2 < n) {
        du2(i) = du(i + 1);
        du(i + 1) = -fact * du(i + 1);
      }
      swapped[static_cast<std::size_t>(i)] = 1;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i) == 0.0) d(i) = pivot_floor;
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (!swapped[static_cast<std::size_t>(i)]) {
      rhs(i + 1) -= dl(i) * rhs(i);
    } else {
      const double temp = rhs(i);
      rhs(i) = rhs(i + 1);
      rhs(i + 1) = temp - dl(i) * rhs(i);
    }
  }
  rhs(n - 1) /= d(n - 1);
  rhs(n - 2) = (rhs(n - 2) - du(n - 2) * rhs(n - 1)) / d(n - 2);
  for (Eigen::Index i = n - 3; i >= 0; --i) {
    rhs(i) = (rhs(i) - du(i) * rhs(i + 1) - du2(i) * rhs(i + 2)) / d(i);
  }
}

Eigen::VectorXd random_unit_vector(std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = rng.uniform(i) - 0.5;
  return v.normalized();
}

EigenPair dense_largest(std::size_t n, const LinearOperator& op) {
  const Eigen::MatrixXd m = materialize(n, op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const auto last = static_cast<Eigen::Index>(n) - 1;
  return {solver.eigenvalues()(last), solver.eigenvectors().col(last), 0};
}

// Removes the components of w along the first `cols` columns of `basis`.
// Two passes of classical Gram-Schmidt.
void orthogonalize(const Eigen::MatrixXd& basis, Eigen::Index cols, Eigen::VectorXd& w) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd h = basis.leftCols(cols).transpose() * w;
    w.noalias() -= basis.leftCols(cols) * h;
  }
}

}  // namespace

EigenPair tridiagonal_largest(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index k = a.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double radius = (i > 0 ? std::abs(b(i - 1)) : 0.0) + (i + 1 < k ? std::abs(b(i)) : 0.0);
    lo = std::min(lo, a(i) - radius);
    hi = std::max(hi, a(i) + radius);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  const auto all = static_cast<std::size_t>(k);
  for (int iter = 0; iter < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * scale; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (sturm_count_below(a, b, mid) == all ? hi : lo) = mid;
  }
  EigenPair out;
  out.value = 0.5 * (lo + hi);
  Eigen::VectorXd y(k);
  const CounterRng rng(0x747269646961ULL);
  for (Eigen::Index i = 0; i < k; ++i) y(i) = 0.5 + rng.uniform(static_cast<std::uint64_t>(i));
  const double floor = std::numeric_limits<double>::epsilon() * scale;
  for (int iter = 0; iter < 3; ++iter) {
    tridiagonal_solve(a, b, out.value, floor, y);
    y.normalize();
  }
  out.vector = std::move(y);
  return out;
}

Eigen::MatrixXd materialize(std::size_t n, const LinearOperator& op) {
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(size, size);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(size);
  Eigen::VectorXd col(size);
  for (Eigen::Index j = 0; j < size; ++j) {
    e(j) = 1.0;
    op(e, col);
    m.col(j) = col;
    e(j) = 0.0;
  }
  return 0.5 * (m + m.transpose());
}

EigenPair largest_eigenpair(std::size_t n, const LinearOperator& op, const EigenSolverOptions& options) {
  if (n == 0) throw InputError("eigenproblem of size zero");
  if (n <= options.dense_threshold) return dense_largest(n, op);

  const auto size = static_cast<Eigen::Index>(n);
  const std::size_t max_iterations = options.max_iterations ? options.max_iterations : 10 * n;
  const auto krylov = static_cast<Eigen::Index>(std::clamp<std::size_t>(options.krylov_dimension, 2, n));

  // Orthonormal basis of invariant subspaces found by breakdowns.
  Eigen::MatrixXd locked(size, 0);
  double locked_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd locked_vector;

  Eigen::MatrixXd basis(size, krylov + 1);
  Eigen::VectorXd alpha(krylov);
  Eigen::VectorXd beta(krylov);
  Eigen::VectorXd w(size);

  Eigen::VectorXd start = random_unit_vector(n, options.start_seed);
  std::uint64_t fresh_starts = 0;
  std::size_t iterations = 0;
  double estimate = std::numeric_limits<double>::quiet_NaN();

  auto finish = [&](double value, Eigen::VectorXd vector) {
    if (locked_value > value) return EigenPair{locked_value, locked_vector, iterations};
    return EigenPair{value, vector.normalized(), iterations};
  };

  while (iterations < max_iterations) {
    orthogonalize(locked, locked.cols(), start);
    const double start_norm = start.norm();
    if (locked.cols() >= size || start_norm < 1e-8) {
      if (locked.cols() > 0 && locked.cols() >= size) return finish(locked_value, locked_vector);
      start = random_unit_vector(n, derive_seed(options.start_seed, ++fresh_starts));
      continue;
    }
    basis.col(0) = start / start_norm;
    const Eigen::Index cycle = std::min<Eigen::Index>(krylov, size - locked.cols());

    for (Eigen::Index j = 0; j < cycle; ++j) {
      op(basis.col(j), w);
      ++iterations;
      alpha(j) = basis.col(j).dot(w);
      w.noalias() -= alpha(j) * basis.col(j);
      if (j > 0) w.noalias() -= beta(j - 1) * basis.col(j - 1);
      orthogonalize(basis, j + 1, w);
      orthogonalize(locked, locked.cols(), w);
      beta(j) = w.norm();

      const double t_scale = std::max(alpha.head(j + 1).cwiseAbs().maxCoeff(),
                                      j > 0 ? beta.head(j).cwiseAbs().maxCoeff() : 0.0);
      const bool breakdown = beta(j) <= 1e-12 * std::max(1.0, t_scale);
      const bool last = j + 1 == cycle || iterations >= max_iterations;
      if (!breakdown && !last && (j + 1) % 4 != 0) {
        basis.col(j + 1) = w / beta(j);
        continue;
      }

      const EigenPair ritz = tridiagonal_largest(alpha.head(j + 1), beta.head(j));
      estimate = std::max(ritz.value, locked_value);
      const double residual = beta(j) * std::abs(ritz.vector(j));
      if (breakdown) {
        // basis[:, 0..j] spans an invariant subspace; lock it and explore the rest.
        const Eigen::VectorXd x = basis.leftCols(j + 1) * ritz.vector;
        if (ritz.value > locked_value) {
          locked_value = ritz.value;
          locked_vector = x.normalized();
        }
        locked.conservativeResize(Eigen::NoChange, locked.cols() + j + 1);
        locked.rightCols(j + 1) = basis.leftCols(j + 1);
        if (locked.cols() >= size) return finish(locked_value, locked_vector);
        start = random_unit_vector(n, derive_seed(options.start_seed, ++fresh_starts));
        break;
      }
      if (residual <= options.tolerance) {
        return finish(ritz.value, basis.leftCols(j + 1) * ritz.vector);
      }
      if (last) {
        start = basis.leftCols(j + 1) * ritz.vector;
        break;
      }
      basis.col(j + 1) = w / beta(j);
    }
  }
  throw SolverError("Lanczos did not converge within " + std::to_string(max_iterations) +
                        " iterations",
                    estimate);
}

}  // namespace twsplit
