#include <doctest.h>

#include <cmath>

#include "twsplit/error.hpp"
#include "twsplit/random_models.hpp"
#include "twsplit/rng.hpp"

using namespace twsplit;

namespace {

double binomial_sd(double trials, double p) { return std::sqrt(trials * p * (1.0 - p)); }

}  // namespace

TEST_SUITE("random_models") {
  TEST_CASE("pair_index enumerates the upper triangle row by row") {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < 7; ++i) {
      for (std::uint64_t j = i + 1; j < 7; ++j) CHECK(pair_index(7, i, j) == k++);
    }
  }

  TEST_CASE("ER extremes") {
    CHECK(sample_er({20, 1.0}, 1).num_edges() == 190);
    CHECK(sample_er({20, 0.0}, 1).num_edges() == 0);
    CHECK(sample_er({0, 0.5}, 1).num_nodes() == 0);
  }

  TEST_CASE("ER edge count within four binomial standard deviations") {
    const double pairs = 1000.0 * 999.0 / 2.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Graph g = sample_er({1000, 0.1}, seed);
      CHECK(std::abs(static_cast<double>(g.num_edges()) - 0.1 * pairs) < 4.0 * binomial_sd(pairs, 0.1));
    }
  }

  TEST_CASE("ER is a pure function of the seed") {
    CHECK(sample_er({200, 0.1}, 42).edges() == sample_er({200, 0.1}, 42).edges());
    CHECK(sample_er({200, 0.1}, 42).edges() != sample_er({200, 0.1}, 43).edges());
  }

  TEST_CASE("each pair is an edge with frequency p over seeds") {
    const int seeds = 4000;
    int hits01 = 0;
    int hits57 = 0;
    for (int s = 0; s < seeds; ++s) {
      const Graph g = sample_er({10, 0.3}, static_cast<std::uint64_t>(s));
      hits01 += g.has_edge(0, 1);
      hits57 += g.has_edge(5, 7);
    }
    const double sd = binomial_sd(seeds, 0.3);
    CHECK(std::abs(hits01 - 0.3 * seeds) < 4.0 * sd);
    CHECK(std::abs(hits57 - 0.3 * seeds) < 4.0 * sd);
  }

  TEST_CASE("one-block SBM reproduces ER") {
    SbmParams params;
    params.block_sizes = {150};
    params.probabilities = Eigen::MatrixXd::Constant(1, 1, 0.2);
    const SbmSample s = sample_sbm(params, 9);
    CHECK(s.graph.edges() == sample_er({150, 0.2}, 9).edges());
    CHECK(std::all_of(s.true_labels.begin(), s.true_labels.end(), [](int l) { return l == 0; }));
  }

  TEST_CASE("all-ones SBM is complete with block labels") {
    SbmParams params;
    params.block_sizes = {3, 4};
    params.probabilities = Eigen::MatrixXd::Ones(2, 2);
    const SbmSample s = sample_sbm(params, 1);
    CHECK(s.graph.num_edges() == 21);
    CHECK(s.true_labels == std::vector<int>{0, 0, 0, 1, 1, 1, 1});
  }

  TEST_CASE("two-block SBM densities within binomial bands") {
    SbmParams params;
    params.block_sizes = {150, 150};
    params.probabilities.resize(2, 2);
    params.probabilities << 0.3, 0.05, 0.05, 0.3;
    const SbmSample s = sample_sbm(params, 4);
    double within0 = 0, within1 = 0, cross = 0;
    for (const Edge& e : s.graph.edges()) {
      const int a = s.true_labels[e.u];
      const int b = s.true_labels[e.v];
      if (a != b) {
        ++cross;
      } else {
        (a == 0 ? within0 : within1) += 1;
      }
    }
    const double within_pairs = 150.0 * 149.0 / 2.0;
    const double cross_pairs = 150.0 * 150.0;
    CHECK(std::abs(within0 - 0.3 * within_pairs) < 4.0 * binomial_sd(within_pairs, 0.3));
    CHECK(std::abs(within1 - 0.3 * within_pairs) < 4.0 * binomial_sd(within_pairs, 0.3));
    CHECK(std::abs(cross - 0.05 * cross_pairs) < 4.0 * binomial_sd(cross_pairs, 0.05));
  }

  TEST_CASE("shuffled SBM labels are a permutation of the blocks") {
    SbmParams params;
    params.block_sizes = {30, 70};
    params.probabilities.resize(2, 2);
    params.probabilities << 0.5, 0.01, 0.01, 0.5;
    const SbmSample s = sample_sbm(params, 8, true);
    CHECK(std::count(s.true_labels.begin(), s.true_labels.end(), 0) == 30);
    CHECK(s.true_labels != sample_sbm(params, 8, false).true_labels);
    std::size_t within = 0;
    for (const Edge& e : s.graph.edges()) within += s.true_labels[e.u] == s.true_labels[e.v];
    CHECK(static_cast<double>(within) / static_cast<double>(s.graph.num_edges()) > 0.9);
  }

  TEST_CASE("SBM parameter validation") {
    SbmParams params;
    params.block_sizes = {3, 4};
    params.probabilities.resize(2, 2);
    params.probabilities << 0.5, 0.1, 0.2, 0.5;
    CHECK_THROWS_AS(params.validate(), InputError);
    params.probabilities << 0.5, 0.1, 0.1, 1.5;
    CHECK_THROWS_AS(params.validate(), InputError);
    params.probabilities << 0.5, 0.1, 0.1, 0.5;
    params.block_sizes = {3, 0};
    CHECK_THROWS_AS(params.validate(), InputError);
    params.block_sizes = {3};
    CHECK_THROWS_AS(params.validate(), InputError);
  }

  TEST_CASE("GOE samples") {
    const GoeSample one = sample_goe(1, 3);
    CHECK(one.entries.rows() == 1);
    CHECK(std::isfinite(one.entries(0, 0)));

    const GoeSample a = sample_goe(30, 5);
    CHECK(a.entries == sample_goe(30, 5).entries);
    CHECK(a.entries == a.entries.transpose());

    const std::size_t n = 500;
    const GoeSample m = sample_goe(n, 7);
    double off_sum = 0.0, off_sq = 0.0, diag_sq = 0.0;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
      diag_sq += m.entries(i, i) * m.entries(i, i);
      for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(n); ++j) {
        off_sum += m.entries(i, j);
        off_sq += m.entries(i, j) * m.entries(i, j);
      }
    }
    const double pairs = static_cast<double>(n * (n - 1) / 2);
    CHECK(std::abs(off_sum / pairs) < 4.0 / std::sqrt(pairs));
    // variance estimates: sd of a chi-square mean is sqrt(2 / k) relative
    CHECK(std::abs(off_sq / pairs - 1.0) < 4.0 * std::sqrt(2.0 / pairs));
    CHECK(std::abs(diag_sq / static_cast<double>(n) - 2.0) < 4.0 * 2.0 * std::sqrt(2.0 / static_cast<double>(n)));
  }

  TEST_CASE("derived seeds differ across indices") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CounterRng rng(5);
    double sum = 0.0;
    for (std::uint64_t k = 0; k < 100000; ++k) sum += rng.uniform(k);
    CHECK(std::abs(sum / 100000.0 - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 100000.0));
  }
}
