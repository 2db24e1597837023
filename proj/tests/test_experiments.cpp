#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "twsplit/error.hpp"
#include "twsplit/experiments.hpp"
#include "twsplit/rng.hpp"
#include "twsplit/tracy_widom.hpp"

using namespace twsplit;

TEST_SUITE("experiments") {

TEST_CASE("sample summary") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const SampleSummary s = summarize(xs);
  CHECK(s.mean == 2.5);
  CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
  CHECK(summarize(std::vector<double>{7.0}).sd == 0.0);
  CHECK(summarize(std::vector<double>{}).mean == 0.0);
}

TEST_CASE("KS distance known values") {
  CHECK(ks_distance_uniform(std::vector<double>{0.5}) == 0.5);
  CHECK(ks_distance_uniform(std::vector<double>{0.25, 0.75}) == 0.25);
  CHECK(ks_distance_uniform(std::vector<double>{0.0, 0.0}) == 1.0);
  CHECK(ks_distance_uniform(std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}) == doctest::Approx(0.1).epsilon(1e-12));
  std::vector<double> mid;
  for (int i = 0; i < 40; ++i) mid.push_back(tw1_quantile((i + 0.5) / 40.0));
  CHECK(ks_distance_tw1(mid) == doctest::Approx(0.5 / 40.0).epsilon(1e-5));
  CHECK_THROWS_AS(ks_distance_uniform(std::vector<double>{}), InputError);
}

TEST_CASE("histogram bins") {
  const Histogram h{0.0, 1.0, 4};
  CHECK(h.width() == 0.25);
  const std::vector<double> xs{-0.1, 0.0, 0.24, 0.25, 0.99, 1.0, 0.5};
  CHECK(bin_counts(xs, h) == std::vector<std::size_t>{2, 1, 1, 1});

  std::ostringstream out;
  const std::vector<double> a{0.1, 0.6};
  write_histogram_csv(out, Histogram{0.0, 1.0, 2}, {{"a", a}});
  const std::string csv = out.str();
  CHECK(csv.rfind("bin_left,bin_right,a,tw1_density\n0,0.5,1,", 0) == 0);
  CHECK(csv.find("\n0.5,1,1,") != std::string::npos);
}

TEST_CASE("convergence cases parse") {
  const ConvergenceCase g = parse_convergence_case("goe:50");
  CHECK(g.ensemble == Ensemble::Goe);
  CHECK(g.n == 50);
  CHECK(to_string(g) == "goe:50");
  const ConvergenceCase e = parse_convergence_case("er:200:0.05");
  CHECK(e.ensemble == Ensemble::ErdosRenyi);
  CHECK(e.n == 200);
  CHECK(e.p == 0.05);
  CHECK(to_string(e) == "er:200:0.05");
  for (const char* bad : {"goe", "er:10", "er:10:1.5", "xx:10", "goe:abc", "goe:1", "er:10:0.1:3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_convergence_case(bad), InputError);
  }
}

TEST_CASE("convergence study") {
  const ConvergenceCase c = parse_convergence_case("er:40:0.5");
  const ConvergenceStudy a = tw_convergence(c, 30, 10, StatisticVariant::Adjacency, 9, 1);
  const ConvergenceStudy b = tw_convergence(c, 30, 10, StatisticVariant::Adjacency, 9, 3);
  CHECK(a.raw == b.raw);
  CHECK(a.corrected_small == b.corrected_small);
  REQUIRE(a.raw.size() == 30);
  const SampleSummary full = summarize(a.corrected_full);
  CHECK(full.mean == doctest::Approx(tw1_moments().mean).epsilon(1e-12));
  CHECK(full.sd == doctest::Approx(tw1_moments().stddev).epsilon(1e-12));
  CHECK(a.ks_full == doctest::Approx(ks_distance_tw1(a.corrected_full)).epsilon(1e-15));
  CHECK(a.small_moments.mean != a.full_moments.mean);
  CHECK_THROWS_AS(tw_convergence(c, 1, 10, StatisticVariant::Adjacency, 9, 1), InputError);

  const double goe = ensemble_statistic(parse_convergence_case("goe:30"), StatisticVariant::Adjacency, 4);
  CHECK(std::isfinite(goe));
  CHECK(std::abs(goe) < 15.0);
}

TEST_CASE("nested blockmodel") {
  NestedSbmSpec spec;
  const SbmParams p = nested_sbm_params(spec, 0.25);
  CHECK(p.block_sizes == std::vector<std::size_t>{200, 200, 600});
  CHECK(p.probabilities(0, 0) == doctest::Approx(0.05));
  CHECK(p.probabilities(0, 1) == doctest::Approx(0.025));
  CHECK(p.probabilities(1, 2) == doctest::Approx(0.0025));
  CHECK(p.probabilities(2, 2) == doctest::Approx(0.25 * 0.0733));
  // Sum over ordered pairs of distinct nodes, divided by n.
  const double expected = (2 * 200 * 199 * 0.05 + 2 * 200 * 200 * 0.025 + 4 * 200 * 600 * 0.0025 +
                           600 * 599 * 0.25 * 0.0733) /
                          1000.0;
  CHECK(expected_average_degree(p) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected_average_degree(p) == doctest::Approx(13.8).epsilon(0.01));
  CHECK(expected_average_degree(nested_sbm_params(spec, 0.05)) ==
        doctest::Approx(expected / 5.0).epsilon(1e-12));
  spec.sizes = {10, 10};
  CHECK_THROWS_AS(nested_sbm_params(spec, 0.1), InputError);
}

TEST_CASE("null calibration and clustering runs are reproducible") {
  TestConfig cfg;
  cfg.seed = 5;
  cfg.bootstrap_samples = 10;
  cfg.jobs = 2;
  const NullCalibration a = null_calibration(60, 0.3, 6, 0.05, cfg);
  cfg.jobs = 1;
  const NullCalibration b = null_calibration(60, 0.3, 6, 0.05, cfg);
  CHECK(a.pvalues == b.pvalues);
  CHECK(a.ks_uniform == doctest::Approx(ks_distance_uniform(a.pvalues)));
  for (double p : a.pvalues) CHECK((p >= 0.0 && p <= 1.0));

  NestedSbmSpec spec;
  spec.sizes = {40, 40, 120};
  PartitionConfig pc;
  pc.test.bootstrap_samples = 10;
  const auto r1 = clustering_runs(nested_sbm_params(spec, 1.0), 3, pc, 7, 1);
  const auto r2 = clustering_runs(nested_sbm_params(spec, 1.0), 3, pc, 7, 3);
  REQUIRE(r1.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r1[i].ari == r2[i].ari);
    CHECK(r1[i].leaves == r2[i].leaves);
    CHECK(r1[i].seed == derive_seed(7, 2 * i + 1));
  }
}

}  // TEST_SUITE
