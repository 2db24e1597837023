#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twsplit/hypothesis_test.hpp"
#include "twsplit/partition.hpp"
#include "twsplit/random_models.hpp"

namespace twsplit {

struct SampleSummary {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
  double sd = 0.0;
};

SampleSummary summarize(std::span<const double> xs);

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and `cdf`.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);
double ks_distance_uniform(std::span<const double> samples);
double ks_distance_tw1(std::span<const double> samples);

enum class Ensemble { Goe, ErdosRenyi };

struct ConvergenceCase {
  Ensemble ensemble = Ensemble::ErdosRenyi;
  std::size_t n = 50;
  /// Edge probability; unused for GOE.
  double p = 0.5;
};

/// "goe:N" or "er:N:P".
ConvergenceCase parse_convergence_case(std::string_view spec);
std::string to_string(const ConvergenceCase& c);

/// Edge statistic of one draw: n^{2/3} (lambda1 / sqrt(n) - 2) for GOE, the
/// `variant` statistic for ER. ER draws whose statistic is undefined are
/// redrawn as in the bootstrap.
double ensemble_statistic(const ConvergenceCase& c, StatisticVariant variant, std::uint64_t seed,
                          const EigenSolverOptions& solver = {});

struct ConvergenceStudy {
  ConvergenceCase setting;
  std::vector<double> raw;
  /// Shifted and scaled with the mean and deviation of `raw` itself.
  std::vector<double> corrected_full;
  /// Shifted and scaled with moments of a separate small sample.
  std::vector<double> corrected_small;
  SampleSummary full_moments;
  SampleSummary small_moments;
  double ks_raw = 0.0;
  double ks_full = 0.0;
  double ks_small = 0.0;
};

/// Draws `runs` statistics plus `small_samples` independent ones for the
/// small-sample correction, and compares all three versions with TW1.
ConvergenceStudy tw_convergence(const ConvergenceCase& c, std::size_t runs, std::size_t small_samples,
                                StatisticVariant variant, std::uint64_t seed, std::size_t jobs,
                                const EigenSolverOptions& solver = {});

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t bins = 0;
  double width() const { return (hi - lo) / static_cast<double>(bins); }
};

/// Bin counts of xs on `h`; values outside [lo, hi) are dropped.
std::vector<std::size_t> bin_counts(std::span<const double> xs, const Histogram& h);

/// CSV with bin edges, the density of each named series and the TW1 density
/// at the bin centre.
void write_histogram_csv(std::ostream& out, const Histogram& h,
                         const std::vector<std::pair<std::string, std::span<const double>>>& series);

struct NullCalibration {
  std::vector<double> pvalues;
  double ks_uniform = 0.0;
  /// Fraction of p-values below `level`.
  double rejection_rate = 0.0;
};

/// Tests `runs` ER(n, p) graphs. Run r uses graph seed derive_seed(g, r) and
/// test seed derive_seed(t, r) for streams g and t derived from cfg.seed.
NullCalibration null_calibration(std::size_t n, double p, std::size_t runs, double level,
                                 const TestConfig& cfg);

struct NestedSbmSpec {
  double a = 0.2;
  double b = 0.1;
  double c = 0.01;
  double d = 0.0733;
  std::vector<std::size_t> sizes{200, 200, 600};
};

/// Three-block model with B11 = B22 = rho a, B12 = rho b, B13 = B23 = rho c,
/// B33 = rho d.
SbmParams nested_sbm_params(const NestedSbmSpec& spec, double rho);

/// Expected average degree of an SBM.
double expected_average_degree(const SbmParams& params);

struct ClusteringRun {
  double ari = 0.0;
  std::size_t leaves = 0;
  std::uint64_t seed = 0;
};

/// Clusters `runs` samples of `params` and scores the leaves against the
/// blocks. Run r samples with derive_seed(seed, 2r) and clusters with
/// derive_seed(seed, 2r + 1).
std::vector<ClusteringRun> clustering_runs(const SbmParams& params, std::size_t runs,
                                           const PartitionConfig& cfg, std::uint64_t seed,
                                           std::size_t jobs);

}  // namespace twsplit
