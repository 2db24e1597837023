// Regenerates src/tw1_table.inc.
//
// F_1(s) = det(I - K_s) on L^2(0, inf) with K_s(u, v) = Ai(s + (u + v) / 2) / 2,
// discretized by Gauss-Legendre Nystrom on a truncated interval. The symmetric
// discretized kernel is diagonalized so that
//   log F = sum log1p(-mu_i),   d log F / ds = -tr((I - K)^{-1} dK/ds),
// which keeps relative accuracy in both tails. Usage:
//   gen_tw1_table [nodes] > src/tw1_table.inc

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <boost/math/special_functions/airy.hpp>
#include <Eigen/Dense>

namespace {

struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Golub-Welsch on [-1, 1], then Newton polishing on the Legendre recurrence.
Quadrature gauss_legendre(int m) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  Quadrature q{solver.eigenvalues(), Eigen::VectorXd(m)};
  for (int i = 0; i < m; ++i) {
    long double x = q.nodes(i);
    long double dp = 0;
    for (int it = 0; it < 4; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      x -= p1 / dp;
    }
    q.nodes(i) = static_cast<double>(x);
    q.weights(i) = static_cast<double>(2 / ((1 - x * x) * dp * dp));
  }
  return q;
}

struct Point {
  double log_cdf;
  double dlog_cdf;
};

Point evaluate(double s, const Quadrature& gl) {
  const int m = static_cast<int>(gl.nodes.size());
  const double length = std::max(-s, 0.0) + 24.0;
  Eigen::VectorXd u(m), sw(m);
  for (int i = 0; i < m; ++i) {
    u(i) = 0.5 * length * (gl.nodes(i) + 1.0);
    sw(i) = std::sqrt(0.5 * length * gl.weights(i));
  }
  Eigen::MatrixXd k(m, m), dk(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double arg = s + 0.5 * (u(i) + u(j));
      const double w = 0.5 * sw(i) * sw(j);
      k(i, j) = k(j, i) = w * boost::math::airy_ai(arg);
      dk(i, j) = dk(j, i) = w * boost::math::airy_ai_prime(arg);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k);
  const Eigen::VectorXd& mu = solver.eigenvalues();
  const Eigen::MatrixXd projected = solver.eigenvectors().transpose() * dk * solver.eigenvectors();
  Point p{0.0, 0.0};
  for (int i = 0; i < m; ++i) {
    p.log_cdf += std::log1p(-mu(i));
    p.dlog_cdf -= projected(i, i) / (1.0 - mu(i));
  }
  return p;
}

void emit_array(const char* name, const std::vector<double>& values) {
  std::printf("inline constexpr double %s[] = {\n", name);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::printf("%s%.17g,%s", i % 4 == 0 ? "    " : " ", values[i], i % 4 == 3 ? "\n" : "");
  }
  std::printf("\n};\n\n");
}

}  // namespace

int main(int argc, char** argv) {
  const int m = argc > 1 ? std::atoi(argv[1]) : 200;
  constexpr double kStart = -10.0;
  constexpr double kStep = 1.0 / 64.0;
  constexpr int kSize = 19 * 64 + 1;  // [-10, 9]

  const Quadrature gl = gauss_legendre(m);
  std::vector<double> log_cdf(kSize), dlog_cdf(kSize), log_sf(kSize), dlog_sf(kSize), pdf(kSize);
  for (int i = 0; i < kSize; ++i) {
    const double s = kStart + kStep * i;
    const Point p = evaluate(s, gl);
    const double cdf = std::exp(p.log_cdf);
    const double sf = -std::expm1(p.log_cdf);
    log_cdf[i] = p.log_cdf;
    dlog_cdf[i] = p.dlog_cdf;
    pdf[i] = cdf * p.dlog_cdf;
    log_sf[i] = std::log(sf);
    dlog_sf[i] = -pdf[i] / sf;
  }

  // Moments by composite Simpson over the density; mass outside the grid is
  // below 1e-9 and ignored.
  double mass = 0.0, first = 0.0, second = 0.0;
  for (int i = 0; i < kSize; ++i) {
    const double x = kStart + kStep * i;
    const double w = (i == 0 || i == kSize - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    mass += w * pdf[i];
    first += w * x * pdf[i];
    second += w * x * x * pdf[i];
  }
  mass *= kStep / 3.0;
  first *= kStep / 3.0;
  second *= kStep / 3.0;
  const double mean = first / mass;
  const double stddev = std::sqrt(second / mass - mean * mean);

  std::printf("// Generated by tools/gen_tw1_table.cpp with %d quadrature nodes. Do not edit.\n", m);
  std::printf("// Density mass on the grid: %.15f\n\n", mass);
  std::printf("inline constexpr double kTw1GridStart = %.17g;\n", kStart);
  std::printf("inline constexpr double kTw1GridStep = %.17g;\n", kStep);
  std::printf("inline constexpr std::size_t kTw1GridSize = %d;\n", kSize);
  std::printf("inline constexpr double kTw1Mean = %.17g;\n", mean);
  std::printf("inline constexpr double kTw1StdDev = %.17g;\n\n", stddev);
  emit_array("kTw1LogCdf", log_cdf);
  emit_array("kTw1LogCdfSlope", dlog_cdf);
  emit_array("kTw1LogSf", log_sf);
  emit_array("kTw1LogSfSlope", dlog_sf);
  return 0;
}
