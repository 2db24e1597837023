#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "twsplit/graph.hpp"
#include "twsplit/lanczos.hpp"
#include "twsplit/spectral.hpp"

namespace twsplit {

struct TestConfig {
  /// Number of Erdos-Renyi replicates used to estimate the shift and scale.
  std::size_t bootstrap_samples = 50;
  StatisticVariant variant = StatisticVariant::Adjacency;
  std::uint64_t seed = 0;
  /// Shared by the observed statistic and every replicate.
  EigenSolverOptions solver;
  /// Worker threads for the replicates.
  std::size_t jobs = 1;

  void validate() const;
};

struct TestReport {
  double theta = 0.0;
  double theta_prime = 0.0;
  double p_value = 1.0;
  double boot_mean = 0.0;
  double boot_std = 0.0;
  std::size_t n = 0;
  double p_hat = 0.0;
  StatisticVariant variant = StatisticVariant::Adjacency;
  std::size_t bootstrap_samples = 0;
};

/// Replicate draws that hit an edge density of 0 or 1 are redrawn this many
/// times before the bootstrap gives up.
inline constexpr int kMaxReplicateRedraws = 5;

/// Statistics of `cfg.bootstrap_samples` ER(n, p_hat) replicates. Replicate i
/// uses seed derive_seed(cfg.seed, i), so the result does not depend on
/// cfg.jobs. Throws DegenerateError when redraws run out.
std::vector<double> bootstrap_statistics(std::size_t n, double p_hat, const TestConfig& cfg);

/// Shifts and scales theta so the replicate mean and standard deviation map
/// onto the TW1 mean and standard deviation.
double moment_corrected(double theta, double boot_mean, double boot_std);

/// Moment-corrected Tracy-Widom test of theta against the ER(n, p_hat) null.
/// Throws DegenerateError when the replicates have zero spread.
TestReport run_test(double theta, std::size_t n, double p_hat, const TestConfig& cfg);

/// Computes the configured statistic of g and tests it.
TestReport test_graph(const Graph& g, const TestConfig& cfg);

/// Parameter sweeps over a planted-cluster blockmodel with two blocks:
/// block 0 of size n1 (within-probability b11) and the rest at b22, with
/// cross probability b12.
struct SweepSpec {
  enum class Parameter { PlantedSize, CrossProbability };

  Parameter parameter = Parameter::PlantedSize;
  std::size_t n = 1000;
  std::size_t n1 = 100;
  double b11 = 0.15;
  double b12 = 0.05;
  /// Negative means "equal to b12", as in the planted-cluster setup.
  double b22 = -1.0;
  std::vector<double> values;
};

struct SweepRow {
  double param = 0.0;
  double mean_pvalue = 0.0;
  double sd_pvalue = 0.0;
  std::size_t runs = 0;
  std::vector<double> pvalues;
};

/// For each sweep value, tests `runs` blockmodel samples. Run r uses the same
/// graph seed at every sweep value (common random numbers), and a test seed
/// derived from (cfg.seed, r).
std::vector<SweepRow> pvalue_sweep(const SweepSpec& spec, std::size_t runs, const TestConfig& cfg);

}  // namespace twsplit
