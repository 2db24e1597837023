#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twsplit/graph.hpp"
#include "twsplit/hypothesis_test.hpp"

namespace twsplit {

/// Why a tree node was not split further. `None` marks internal nodes.
enum class StopReason {
  None,
  NotSignificant,
  MinSize,
  TooSmall,
  DegenerateDensity,
  DegenerateBootstrap,
  SolverFailure,
  Isolated,
  UnbalancedSplit,
};

/// How an internal node was divided.
enum class SplitKind {
  /// Test rejected the null and the spectral bipartition produced the children.
  Spectral,
  /// Zero-degree nodes were set aside before testing (right child).
  Isolated,
};

std::string_view to_string(StopReason r);
StopReason parse_stop_reason(std::string_view s);
std::string_view to_string(SplitKind k);
SplitKind parse_split_kind(std::string_view s);

struct ClusterTree {
  int node_id = 0;
  /// Sorted node indices of the root graph.
  std::vector<NodeIndex> members;
  double p_hat = 0.0;
  std::optional<double> p_value;
  std::optional<double> theta;
  StopReason stop_reason = StopReason::None;
  SplitKind split = SplitKind::Spectral;
  std::vector<ClusterTree> children;
  int depth = 0;

  bool is_leaf() const noexcept { return children.empty(); }
};

struct RegularizerPolicy {
  enum class Kind { AverageDegree, Fixed };
  Kind kind = Kind::AverageDegree;
  double tau = 0.0;
};

struct PartitionConfig {
  double alpha = 0.01;
  /// Subgraphs smaller than this become leaves; 0 disables the rule.
  std::size_t min_size = 10;
  TestConfig test;
  RegularizerPolicy regularizer;

  void validate() const;
};

struct Bipartition {
  NodeSubset first;
  NodeSubset second;
  /// The eigenvector was flat and the median split was used instead.
  bool median_fallback = false;
};

/// Two-way split from the eigenvector of the second largest eigenvalue of the
/// regularized Laplacian D_t^{-1/2} (A + t/n J) D_t^{-1/2}, D_t = D + t I,
/// cut by exact one-dimensional 2-means. `first` holds node 0.
Bipartition spectral_bipartition(const Graph& g, const RegularizerPolicy& regularizer = {},
                                 const EigenSolverOptions& solver = {});

/// Recursive bipartitioning driven by the moment-corrected Tracy-Widom test.
ClusterTree recursive_bipartition(const Graph& g, const PartitionConfig& cfg);

/// Leaf member sets, left to right.
std::vector<std::vector<NodeIndex>> flatten_leaves(const ClusterTree& t);

/// Flat label per node of an n-node universe from a partition.
std::vector<int> partition_labels(const std::vector<std::vector<NodeIndex>>& parts, std::size_t n);

struct DensityBlock {
  std::size_t start = 0;
  std::size_t end = 0;
  int depth = 0;
  double p_hat = 0.0;
  int node_id = 0;
};

struct DensityOrdering {
  /// permutation[k] is the node shown at row/column k.
  std::vector<NodeIndex> permutation;
  /// One block per tree node, in preorder; children nest inside parents.
  std::vector<DensityBlock> blocks;
};

DensityOrdering density_ordering(const ClusterTree& t);

/// Structural problems of a tree whose root should cover [0, n); empty if valid.
std::vector<std::string> validate_tree(const ClusterTree& t, std::size_t n);

std::size_t count_leaves(const ClusterTree& t);

/// Calls fn(node) for every tree node in preorder.
template <class Fn>
void for_each_node(const ClusterTree& t, Fn&& fn) {
  fn(t);
  for (const ClusterTree& c : t.children) for_each_node(c, fn);
}

}  // namespace twsplit
