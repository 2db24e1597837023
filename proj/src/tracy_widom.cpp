#include "twsplit/tracy_widom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twsplit {

namespace {

#include "tw1_table.inc"

constexpr double kTailThreshold = 1e-8;

// Exponent of the left-tail asymptotic in |x|, up to an additive constant.
double left_tail_log(double x) {
  const double a = -x;
  return -std::log(a) / 16.0 - a * a * a / 24.0 - std::pow(a, 1.5) / (3.0 * std::sqrt(2.0));
}

double left_tail_log_slope(double x) {
  const double a = -x;
  // d/dx = -d/da
  return 1.0 / (16.0 * a) + a * a / 8.0 + std::sqrt(a) / (2.0 * std::sqrt(2.0));
}

double right_tail_log(double x) { return -0.75 * std::log(x) - (2.0 / 3.0) * std::pow(x, 1.5); }

double right_tail_log_slope(double x) { return -0.75 / x - std::sqrt(x); }

}  // namespace

const Tw1Distribution& Tw1Distribution::instance() {
  static const Tw1Distribution dist;
  return dist;
}

Tw1Distribution::Tw1Distribution() {
  const double log_half = std::log(0.5);
  const double log_tail = std::log(kTailThreshold);
  std::size_t i = 0;
  while (i + 1 < kTw1GridSize && kTw1LogCdf[i] < log_half) ++i;
  median_ = grid_point(i);
  std::size_t lo = 0;
  while (lo + 1 < kTw1GridSize && kTw1LogCdf[lo] < log_tail) ++lo;
  std::size_t hi = kTw1GridSize - 1;
  while (hi > 0 && kTw1LogSf[hi] < log_tail) --hi;
  left_index_ = lo;
  right_index_ = hi;
  left_cross_ = grid_point(lo);
  right_cross_ = grid_point(hi);
}

double Tw1Distribution::grid_start() const noexcept { return kTw1GridStart; }
double Tw1Distribution::grid_step() const noexcept { return kTw1GridStep; }
std::size_t Tw1Distribution::grid_size() const noexcept { return kTw1GridSize; }
double Tw1Distribution::mean() const noexcept { return kTw1Mean; }
double Tw1Distribution::stddev() const noexcept { return kTw1StdDev; }

Tw1Distribution::Piece Tw1Distribution::interpolate(double x, bool lower) const {
  const double* values = lower ? kTw1LogCdf : kTw1LogSf;
  const double* slopes = lower ? kTw1LogCdfSlope : kTw1LogSfSlope;
  const double pos = (x - kTw1GridStart) / kTw1GridStep;
  const auto i = static_cast<std::size_t>(
      std::clamp(std::floor(pos), 0.0, static_cast<double>(kTw1GridSize - 2)));
  const double h = kTw1GridStep;
  const double t = pos - static_cast<double>(i);
  const double y0 = values[i];
  const double y1 = values[i + 1];
  double d0 = slopes[i];
  double d1 = slopes[i + 1];
  // Fritsch-Carlson limiter keeps each piece monotone.
  const double secant = (y1 - y0) / h;
  if (secant == 0.0) {
    d0 = d1 = 0.0;
  } else {
    const double a = d0 / secant;
    const double b = d1 / secant;
    if (a < 0.0) d0 = 0.0;
    if (b < 0.0) d1 = 0.0;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      d0 = tau * a * secant;
      d1 = tau * b * secant;
    }
  }
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
                       (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
  const double slope = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * d0 +
                        (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * h * d1) /
                       h;
  return {value, slope};
}

double Tw1Distribution::cdf(double x) const {
  if (std::isnan(x)) return x;
  if (x < left_cross_) {
    return std::exp(kTw1LogCdf[left_index_] + left_tail_log(x) - left_tail_log(left_cross_));
  }
  if (x > right_cross_) return -std::expm1(std::log(survival(x)));
  if (below_median(x)) return std::exp(interpolate(x, true).log_value);
  return -std::expm1(interpolate(x, false).log_value);
}

double Tw1Distribution::survival(double x) const {
  if (std::isnan(x)) return x;
  if (x > right_cross_) {
    return std::exp(kTw1LogSf[right_index_] + right_tail_log(x) - right_tail_log(right_cross_));
  }
  if (x < left_cross_ || below_median(x)) return 1.0 - cdf(x);
  return std::exp(interpolate(x, false).log_value);
}

double Tw1Distribution::pdf(double x) const {
  if (x < left_cross_) return cdf(x) * left_tail_log_slope(x);
  if (x > right_cross_) return -survival(x) * right_tail_log_slope(x);
  if (below_median(x)) {
    const Piece p = interpolate(x, true);
    return std::exp(p.log_value) * p.log_slope;
  }
  const Piece p = interpolate(x, false);
  return -std::exp(p.log_value) * p.log_slope;
}

double Tw1Distribution::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
  double lo = -20.0;
  double hi = 20.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    // Compare in the tail where the value is representable accurately.
    const bool below = q < 0.5 ? cdf(mid) < q : survival(mid) > 1.0 - q;
    (below ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double tw1_cdf(double x) { return Tw1Distribution::instance().cdf(x); }
double tw1_survival(double x) { return Tw1Distribution::instance().survival(x); }
double tw1_pdf(double x) { return Tw1Distribution::instance().pdf(x); }
double tw1_quantile(double q) { return Tw1Distribution::instance().quantile(q); }

Tw1Moments tw1_moments() {
  const auto& d = Tw1Distribution::instance();
  return {d.mean(), d.stddev()};
}

}  // namespace twsplit
