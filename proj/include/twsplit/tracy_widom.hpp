#pragma once

#include <cstddef>
#include <span>

namespace twsplit {

/// Tracy-Widom law with index one (largest eigenvalue of GOE-class matrices).
///
/// Backed by an embedded table of log F and log(1 - F), with exact slopes, on
/// [-10, 9] at spacing 1/64; see src/tw1_table.md for provenance. Between
/// nodes the log-values are joined by monotone cubic Hermite pieces: log F
/// left of the median, log(1 - F) right of it, so both tails keep relative
/// accuracy. Where the CDF or the survival drops below 1e-8 the classical
/// tail asymptotics
///   F(x)     ~ c |x|^{-1/16} exp(-|x|^3 / 24 - |x|^{3/2} / (3 sqrt 2)),  x -> -inf
///   1 - F(x) ~ c x^{-3/4} exp(-2/3 x^{3/2}),                            x -> +inf
/// are matched to the table's end values.
class Tw1Distribution {
 public:
  static const Tw1Distribution& instance();

  double cdf(double x) const;
  /// P(X > x), computed directly (not as 1 - cdf) right of the median.
  double survival(double x) const;
  double pdf(double x) const;
  /// Inverse CDF by bisection, q in (0, 1).
  double quantile(double q) const;

  double mean() const noexcept;
  double stddev() const noexcept;

  double grid_start() const noexcept;
  double grid_step() const noexcept;
  std::size_t grid_size() const noexcept;
  double grid_point(std::size_t i) const noexcept { return grid_start() + grid_step() * static_cast<double>(i); }
  /// Table is used on [left_crossover, right_crossover], where CDF and
  /// survival both exceed 1e-8; tail asymptotics take over outside.
  double left_crossover() const noexcept { return left_cross_; }
  double right_crossover() const noexcept { return right_cross_; }

 private:
  Tw1Distribution();

  struct Piece {
    double log_value;
    double log_slope;
  };
  // Interpolated log-CDF (lower = true) or log-survival at x inside the grid.
  Piece interpolate(double x, bool lower) const;
  bool below_median(double x) const noexcept { return x <= median_; }

  double median_ = 0.0;
  std::size_t left_index_ = 0;
  std::size_t right_index_ = 0;
  double left_cross_ = 0.0;
  double right_cross_ = 0.0;
};

double tw1_cdf(double x);
double tw1_survival(double x);
double tw1_pdf(double x);
double tw1_quantile(double q);

struct Tw1Moments {
  double mean;
  double stddev;
};

/// Mean and standard deviation, frozen from quadrature over the table.
Tw1Moments tw1_moments();

}  // namespace twsplit
