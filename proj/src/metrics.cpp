#include "twsplit/metrics.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "twsplit/error.hpp"

namespace twsplit {

namespace {

// Pair counts are integers; products of them reach n^4.
using Wide = __int128;

Wide choose2(std::size_t x) { return static_cast<Wide>(x) * (static_cast<Wide>(x) - 1) / 2; }

std::vector<NodeIndex> sorted_unique(std::span<const NodeIndex> s) {
  std::vector<NodeIndex> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t intersection_size(const std::vector<NodeIndex>& a, const std::vector<NodeIndex>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

FScore f_from_counts(std::size_t common, std::size_t truth_size, std::size_t found_size) {
  FScore s;
  s.recall = static_cast<double>(common) / static_cast<double>(truth_size);
  s.precision = static_cast<double>(common) / static_cast<double>(found_size);
  if (common > 0) s.f = 2.0 * s.recall * s.precision / (s.recall + s.precision);
  return s;
}

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw InputError("labelings cover different node sets (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + " nodes)");
  }
  const std::size_t n = a.size();
  if (n < 2) return 1.0;

  std::map<std::pair<int, int>, std::size_t> cells;
  std::map<int, std::size_t> rows;
  std::map<int, std::size_t> cols;
  for (std::size_t i = 0; i < n; ++i) {
    ++cells[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  Wide index = 0;
  for (const auto& [key, c] : cells) index += choose2(c);
  Wide sum_rows = 0;
  for (const auto& [key, c] : rows) sum_rows += choose2(c);
  Wide sum_cols = 0;
  for (const auto& [key, c] : cols) sum_cols += choose2(c);

  // (index - expected) / (max_index - expected) with expected = rows cols / pairs
  // and max_index = (rows + cols) / 2, scaled by 2 pairs so one rounding remains.
  const Wide pairs = choose2(n);
  const Wide num = 2 * pairs * index - 2 * sum_rows * sum_cols;
  const Wide denom = pairs * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols;
  // Both labelings trivial (all one cluster, or all singletons): they agree
  // exactly when identical up to relabeling.
  if (denom == 0) return 2 * index == sum_rows + sum_cols ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(denom);
}

FScore cluster_f_measure(std::span<const NodeIndex> truth, std::span<const NodeIndex> found) {
  if (truth.empty() || found.empty()) throw InputError("F-measure of an empty set");
  const auto t = sorted_unique(truth);
  const auto f = sorted_unique(found);
  return f_from_counts(intersection_size(t, f), t.size(), f.size());
}

double hierarchical_f_measure(const std::vector<std::vector<NodeIndex>>& truth,
                              const ClusterTree& tree) {
  std::vector<const std::vector<NodeIndex>*> candidates;
  for_each_node(tree, [&](const ClusterTree& node) {
    if (!node.members.empty()) candidates.push_back(&node.members);
  });

  double weighted = 0.0;
  double total = 0.0;
  for (const auto& raw : truth) {
    if (raw.empty()) continue;
    const auto c = sorted_unique(raw);
    double best = 0.0;
    for (const auto* members : candidates) {
      best = std::max(best, f_from_counts(intersection_size(c, *members), c.size(), members->size()).f);
    }
    weighted += best * static_cast<double>(c.size());
    total += static_cast<double>(c.size());
  }
  return total > 0.0 ? weighted / total : 0.0;
}

}  // namespace twsplit
