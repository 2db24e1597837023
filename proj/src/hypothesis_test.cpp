#include "twsplit/hypothesis_test.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "twsplit/error.hpp"
#include "twsplit/parallel.hpp"
#include "twsplit/random_models.hpp"
#include "twsplit/rng.hpp"
#include "twsplit/tracy_widom.hpp"

namespace twsplit {

void TestConfig::validate() const {
  if (bootstrap_samples < 2) {
    throw InputError("at least two bootstrap samples are needed for a standard deviation");
  }
}

namespace {

std::uint64_t replicate_seed(std::uint64_t seed, std::size_t index, int attempt) {
  const std::uint64_t base = derive_seed(seed, index);
  return attempt == 0 ? base : derive_seed(base, static_cast<std::uint64_t>(attempt));
}

struct Summary {
  double mean;
  double sd;
};

Summary summarize(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

}  // namespace

std::vector<double> bootstrap_statistics(std::size_t n, double p_hat, const TestConfig& cfg) {
  cfg.validate();
  if (n < 2) throw DegenerateError("bootstrap needs at least two nodes");
  if (!(p_hat > 0.0 && p_hat < 1.0)) throw DegenerateError("bootstrap density must lie in (0, 1)");
  std::vector<double> thetas(cfg.bootstrap_samples);
  parallel_for(cfg.bootstrap_samples, cfg.jobs, [&](std::size_t i) {
    for (int attempt = 0; attempt <= kMaxReplicateRedraws; ++attempt) {
      const Graph replicate = sample_er({n, p_hat}, replicate_seed(cfg.seed, i, attempt));
      try {
        thetas[i] = compute_statistic(replicate, cfg.variant, cfg.solver).theta;
        return;
      } catch (const DegenerateError&) {
        // empty, complete, or (Laplacian) has an isolated node: redraw
      }
    }
    throw DegenerateError("bootstrap replicate " + std::to_string(i) + " stayed degenerate after " +
                          std::to_string(kMaxReplicateRedraws) + " redraws");
  });
  return thetas;
}

double moment_corrected(double theta, double boot_mean, double boot_std) {
  const Tw1Moments tw = tw1_moments();
  return tw.mean + (theta - boot_mean) / boot_std * tw.stddev;
}

TestReport run_test(double theta, std::size_t n, double p_hat, const TestConfig& cfg) {
  const std::vector<double> thetas = bootstrap_statistics(n, p_hat, cfg);
  const Summary s = summarize(thetas);
  if (!(s.sd > 0.0)) {
    throw DegenerateError("bootstrap replicates have zero spread; the graph is too small to test");
  }
  TestReport report;
  report.theta = theta;
  report.boot_mean = s.mean;
  report.boot_std = s.sd;
  report.theta_prime = moment_corrected(theta, s.mean, s.sd);
  report.p_value = tw1_survival(report.theta_prime);
  report.n = n;
  report.p_hat = p_hat;
  report.variant = cfg.variant;
  report.bootstrap_samples = cfg.bootstrap_samples;
  return report;
}

TestReport test_graph(const Graph& g, const TestConfig& cfg) {
  const TestStatistic stat = compute_statistic(g, cfg.variant, cfg.solver);
  return run_test(stat.theta, stat.n, stat.p_hat, cfg);
}

std::vector<SweepRow> pvalue_sweep(const SweepSpec& spec, std::size_t runs, const TestConfig& cfg) {
  if (spec.values.empty()) throw InputError("sweep has no values");
  if (runs == 0) throw InputError("sweep needs at least one run");
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  const std::uint64_t graph_stream = derive_seed(cfg.seed, 0x6772617068ULL);
  const std::uint64_t test_stream = derive_seed(cfg.seed, 0x74657374ULL);
  for (double value : spec.values) {
    std::size_t n1 = spec.n1;
    double b12 = spec.b12;
    if (spec.parameter == SweepSpec::Parameter::PlantedSize) {
      n1 = static_cast<std::size_t>(std::llround(value));
    } else {
      b12 = value;
    }
    if (n1 == 0 || n1 >= spec.n) throw InputError("planted block size must lie in (0, n)");
    const double b22 = spec.b22 < 0.0 ? b12 : spec.b22;
    SbmParams params;
    params.block_sizes = {n1, spec.n - n1};
    params.probabilities.resize(2, 2);
    params.probabilities << spec.b11, b12, b12, b22;

    SweepRow row;
    row.param = value;
    row.runs = runs;
    row.pvalues.assign(runs, 0.0);
    parallel_for(runs, cfg.jobs, [&](std::size_t r) {
      const SbmSample sample = sample_sbm(params, derive_seed(graph_stream, r));
      TestConfig run_cfg = cfg;
      run_cfg.seed = derive_seed(test_stream, r);
      run_cfg.jobs = 1;
      row.pvalues[r] = test_graph(sample.graph, run_cfg).p_value;
    });
    const Summary s = summarize(row.pvalues);
    row.mean_pvalue = s.mean;
    row.sd_pvalue = s.sd;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace twsplit
