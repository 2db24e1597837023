#include "twsplit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "twsplit/error.hpp"
#include "twsplit/io.hpp"
#include "twsplit/metrics.hpp"
#include "twsplit/parallel.hpp"
#include "twsplit/rng.hpp"
#include "twsplit/spectral.hpp"
#include "twsplit/tracy_widom.hpp"

namespace twsplit {

SampleSummary summarize(std::span<const double> xs) {
  if (xs.empty()) return {};
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InputError("KS distance of an empty sample");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_distance_uniform(std::span<const double> samples) {
  return ks_distance(samples, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

double ks_distance_tw1(std::span<const double> samples) { return ks_distance(samples, tw1_cdf); }

ConvergenceCase parse_convergence_case(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.emplace_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const auto bad = [&] { return InputError("bad ensemble '" + std::string(spec) + "', expected goe:N or er:N:P"); };
  ConvergenceCase c;
  try {
    if (parts[0] == "goe" && parts.size() == 2) {
      c.ensemble = Ensemble::Goe;
      c.n = std::stoul(parts[1]);
      c.p = 0.0;
    } else if (parts[0] == "er" && parts.size() == 3) {
      c.ensemble = Ensemble::ErdosRenyi;
      c.n = std::stoul(parts[1]);
      c.p = std::stod(parts[2]);
    } else {
      throw bad();
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (c.n < 2) throw InputError("ensemble size must be at least 2");
  if (c.ensemble == Ensemble::ErdosRenyi && !(c.p > 0.0 && c.p < 1.0)) {
    throw InputError("ensemble edge probability must lie in (0, 1)");
  }
  return c;
}

std::string to_string(const ConvergenceCase& c) {
  if (c.ensemble == Ensemble::Goe) return "goe:" + std::to_string(c.n);
  return "er:" + std::to_string(c.n) + ":" + format_double(c.p);
}

double ensemble_statistic(const ConvergenceCase& c, StatisticVariant variant, std::uint64_t seed,
                          const EigenSolverOptions& solver) {
  const double n = static_cast<double>(c.n);
  if (c.ensemble == Ensemble::Goe) {
    const GoeSample m = sample_goe(c.n, seed);
    const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
      y.noalias() = m.entries * x;
    };
    const double lambda = largest_eigenpair(c.n, op, solver).value;
    return std::pow(n, 2.0 / 3.0) * (lambda / std::sqrt(n) - 2.0);
  }
  for (int attempt = 0; attempt <= kMaxReplicateRedraws; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt));
    try {
      return compute_statistic(sample_er({c.n, c.p}, s), variant, solver).theta;
    } catch (const DegenerateError&) {
    }
  }
  throw DegenerateError("ensemble draw stayed degenerate after redraws");
}

ConvergenceStudy tw_convergence(const ConvergenceCase& c, std::size_t runs, std::size_t small_samples,
                                StatisticVariant variant, std::uint64_t seed, std::size_t jobs,
                                const EigenSolverOptions& solver) {
  if (runs < 2 || small_samples < 2) throw InputError("convergence study needs at least two draws per sample");
  ConvergenceStudy study;
  study.setting = c;
  const std::uint64_t main_stream = derive_seed(seed, 0);
  const std::uint64_t small_stream = derive_seed(seed, 1);
  study.raw.assign(runs, 0.0);
  std::vector<double> small(small_samples, 0.0);
  parallel_for(runs + small_samples, jobs, [&](std::size_t i) {
    if (i < runs) {
      study.raw[i] = ensemble_statistic(c, variant, derive_seed(main_stream, i), solver);
    } else {
      small[i - runs] = ensemble_statistic(c, variant, derive_seed(small_stream, i - runs), solver);
    }
  });
  study.full_moments = summarize(study.raw);
  study.small_moments = summarize(small);
  study.corrected_full.reserve(runs);
  study.corrected_small.reserve(runs);
  for (double t : study.raw) {
    study.corrected_full.push_back(moment_corrected(t, study.full_moments.mean, study.full_moments.sd));
    study.corrected_small.push_back(moment_corrected(t, study.small_moments.mean, study.small_moments.sd));
  }
  study.ks_raw = ks_distance_tw1(study.raw);
  study.ks_full = ks_distance_tw1(study.corrected_full);
  study.ks_small = ks_distance_tw1(study.corrected_small);
  return study;
}

std::vector<std::size_t> bin_counts(std::span<const double> xs, const Histogram& h) {
  std::vector<std::size_t> counts(h.bins, 0);
  for (double x : xs) {
    if (!(x >= h.lo && x < h.hi)) continue;
    const auto k = static_cast<std::size_t>((x - h.lo) / h.width());
    ++counts[std::min(k, h.bins - 1)];
  }
  return counts;
}

void write_histogram_csv(std::ostream& out, const Histogram& h,
                         const std::vector<std::pair<std::string, std::span<const double>>>& series) {
  out << "bin_left,bin_right";
  for (const auto& [name, xs] : series) out << ',' << name;
  out << ",tw1_density\n";
  std::vector<std::vector<std::size_t>> counts;
  for (const auto& [name, xs] : series) counts.push_back(bin_counts(xs, h));
  const double w = h.width();
  for (std::size_t k = 0; k < h.bins; ++k) {
    const double left = h.lo + w * static_cast<double>(k);
    out << format_double(left) << ',' << format_double(left + w);
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double total = static_cast<double>(series[s].second.size());
      out << ',' << format_double(total > 0 ? static_cast<double>(counts[s][k]) / (total * w) : 0.0);
    }
    out << ',' << format_double(tw1_pdf(left + 0.5 * w)) << '\n';
  }
}

NullCalibration null_calibration(std::size_t n, double p, std::size_t runs, double level,
                                 const TestConfig& cfg) {
  if (runs == 0) throw InputError("calibration needs at least one run");
  NullCalibration out;
  out.pvalues.assign(runs, 0.0);
  const std::uint64_t graph_stream = derive_seed(cfg.seed, 0x6772617068ULL);
  const std::uint64_t test_stream = derive_seed(cfg.seed, 0x74657374ULL);
  parallel_for(runs, cfg.jobs, [&](std::size_t r) {
    const Graph g = sample_er({n, p}, derive_seed(graph_stream, r));
    TestConfig run_cfg = cfg;
    run_cfg.seed = derive_seed(test_stream, r);
    run_cfg.jobs = 1;
    out.pvalues[r] = test_graph(g, run_cfg).p_value;
  });
  out.ks_uniform = ks_distance_uniform(out.pvalues);
  const auto rejected = std::count_if(out.pvalues.begin(), out.pvalues.end(), [&](double pv) { return pv < level; });
  out.rejection_rate = static_cast<double>(rejected) / static_cast<double>(runs);
  return out;
}

SbmParams nested_sbm_params(const NestedSbmSpec& spec, double rho) {
  if (spec.sizes.size() != 3) throw InputError("nested blockmodel has exactly three blocks");
  SbmParams params;
  params.block_sizes = spec.sizes;
  params.probabilities.resize(3, 3);
  params.probabilities << rho * spec.a, rho * spec.b, rho * spec.c,  //
      rho * spec.b, rho * spec.a, rho * spec.c,                      //
      rho * spec.c, rho * spec.c, rho * spec.d;
  params.validate();
  return params;
}

double expected_average_degree(const SbmParams& params) {
  const std::size_t k = params.num_blocks();
  double total = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t s = 0; s < k; ++s) {
      const double nr = static_cast<double>(params.block_sizes[r]);
      const double ns = static_cast<double>(params.block_sizes[s]);
      const double pairs = r == s ? nr * (nr - 1.0) : nr * ns;
      total += pairs * params.probabilities(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
    }
  }
  return total / static_cast<double>(params.num_nodes());
}

std::vector<ClusteringRun> clustering_runs(const SbmParams& params, std::size_t runs,
                                           const PartitionConfig& cfg, std::uint64_t seed,
                                           std::size_t jobs) {
  std::vector<ClusteringRun> out(runs);
  parallel_for(runs, jobs, [&](std::size_t r) {
    const SbmSample sample = sample_sbm(params, derive_seed(seed, 2 * r));
    PartitionConfig run_cfg = cfg;
    run_cfg.test.seed = derive_seed(seed, 2 * r + 1);
    run_cfg.test.jobs = 1;
    const ClusterTree tree = recursive_bipartition(sample.graph, run_cfg);
    const auto leaves = flatten_leaves(tree);
    const auto labels = partition_labels(leaves, sample.graph.num_nodes());
    out[r] = {adjusted_rand_index(labels, sample.true_labels), leaves.size(), run_cfg.test.seed};
  });
  return out;
}

}  // namespace twsplit
