#include <doctest.h>

#include <vector>

#include "twsplit/error.hpp"
#include "twsplit/metrics.hpp"
#include "twsplit/rng.hpp"

using namespace twsplit;

namespace {

// Adjusted Rand index from raw pair agreements, O(n^2).
double pair_count_ari(const std::vector<int>& a, const std::vector<int>& b) {
  double both = 0.0, only_a = 0.0, only_b = 0.0, neither = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      if (sa && sb) {
        both += 1;
      } else if (sa) {
        only_a += 1;
      } else if (sb) {
        only_b += 1;
      } else {
        neither += 1;
      }
    }
  }
  const double pairs = both + only_a + only_b + neither;
  const double same_a = both + only_a;
  const double same_b = both + only_b;
  const double expected = same_a * same_b / pairs;
  return (both - expected) / (0.5 * (same_a + same_b) - expected);
}

ClusterTree node(std::vector<NodeIndex> members, std::vector<ClusterTree> children = {}) {
  ClusterTree t;
  t.members = std::move(members);
  t.children = std::move(children);
  if (t.children.empty()) t.stop_reason = StopReason::NotSignificant;
  return t;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("adjusted Rand index hand cases") {
  using V = std::vector<int>;
  CHECK(adjusted_rand_index(V{0, 0, 1, 1}, V{0, 0, 0, 1}) == 0.0);
  CHECK(adjusted_rand_index(V{0, 0, 0, 1, 1, 1}, V{0, 0, 1, 1, 2, 2}) == doctest::Approx(8.0 / 33.0).epsilon(1e-15));
  CHECK(adjusted_rand_index(V{0, 0, 1, 1, 2}, V{0, 0, 1, 1, 2}) == 1.0);
  CHECK(adjusted_rand_index(V{0, 0, 1, 1, 2}, V{7, 7, 3, 3, 9}) == 1.0);
  CHECK(adjusted_rand_index(V{0, 0, 0, 0}, V{0, 1, 2, 3}) == 0.0);
  CHECK(adjusted_rand_index(V{0, 0, 0}, V{5, 5, 5}) == 1.0);
  CHECK(adjusted_rand_index(V{0}, V{4}) == 1.0);
  CHECK_THROWS_AS(adjusted_rand_index(V{0, 1}, V{0}), InputError);
}

TEST_CASE("adjusted Rand index matches pair counting") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    const int ka = 2 + static_cast<int>(rng() % 5);
    const int kb = 2 + static_cast<int>(rng() % 5);
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<int>(rng() % ka);
      b[i] = rng.uniform() < 0.6 ? a[i] : static_cast<int>(rng() % kb);
    }
    const double expected = pair_count_ari(a, b);
    CHECK(adjusted_rand_index(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(adjusted_rand_index(b, a) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("cluster F-measure hand cases") {
  using V = std::vector<NodeIndex>;
  FScore s = cluster_f_measure(V{1, 2, 3}, V{3, 2, 1});
  CHECK(s.recall == 1.0);
  CHECK(s.precision == 1.0);
  CHECK(s.f == 1.0);

  s = cluster_f_measure(V{1, 2}, V{3, 4});
  CHECK(s.recall == 0.0);
  CHECK(s.precision == 0.0);
  CHECK(s.f == 0.0);

  s = cluster_f_measure(V{1, 2}, V{1});
  CHECK(s.recall == 0.5);
  CHECK(s.precision == 1.0);
  CHECK(s.f == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  s = cluster_f_measure(V{1, 1, 2}, V{1, 2, 2});
  CHECK(s.f == 1.0);

  CHECK_THROWS_AS(cluster_f_measure(V{}, V{1}), InputError);
  CHECK_THROWS_AS(cluster_f_measure(V{1}, V{}), InputError);
}

TEST_CASE("hierarchical F-measure takes the best node per truth set") {
  const ClusterTree tree = node({0, 1, 2, 3, 4, 5},
                                {node({0, 3, 4}, {node({0, 4}), node({3})}), node({1, 2, 5})});
  // {0, 1, 2}: best is the root or {1, 2, 5}, F = 2/3; {3}: exact leaf, F = 1.
  CHECK(hierarchical_f_measure({{0, 1, 2}, {3}}, tree) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hierarchical_f_measure({{0, 4}}, tree) == 1.0);
  CHECK(hierarchical_f_measure({{0, 1, 2, 3, 4, 5}}, tree) == 1.0);
  CHECK(hierarchical_f_measure({{9}}, tree) == 0.0);
  CHECK(hierarchical_f_measure({}, tree) == 0.0);
}

}  // TEST_SUITE
