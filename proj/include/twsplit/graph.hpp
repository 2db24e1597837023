#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twsplit {

using NodeIndex = std::uint32_t;

struct Edge {
  NodeIndex u;
  NodeIndex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Counters collected while normalizing an input edge list.
struct BuildDiagnostics {
  std::size_t duplicate_edges = 0;
};

/// Undirected simple graph in compressed adjacency form. Immutable after
/// construction, so one instance can be shared freely across threads.
class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeIndex> neighbors(NodeIndex i) const noexcept {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
  bool has_edge(NodeIndex i, NodeIndex j) const noexcept;

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// External id of node i; the decimal index when the graph is unlabeled.
  std::string label(NodeIndex i) const;

 private:
  friend Graph build_graph(std::size_t, std::span<const Edge>, std::vector<std::string>,
                           BuildDiagnostics*);
  friend Graph build_graph_from_sorted(std::size_t, std::span<const Edge>,
                                       std::vector<std::string>);

  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> adjacency_;
  std::vector<std::string> labels_;
};

/// Builds a graph from an unordered edge list. Both orientations and repeats
/// are merged; self loops and out-of-range endpoints throw InputError.
Graph build_graph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels = {},
                  BuildDiagnostics* diagnostics = nullptr);

/// Fast path for generators: `edges` must already be unique, u < v, and
/// sorted lexicographically. Not validated beyond debug assertions.
Graph build_graph_from_sorted(std::size_t n, std::span<const Edge> edges,
                              std::vector<std::string> labels = {});

/// Sorted, duplicate-free subset of the nodes of one graph.
class NodeSubset {
 public:
  NodeSubset() = default;
  /// Sorts and validates; throws InputError on duplicates or out-of-range ids.
  NodeSubset(const Graph& parent, std::vector<NodeIndex> members);

  const Graph* parent() const noexcept { return parent_; }
  const std::vector<NodeIndex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  const Graph* parent_ = nullptr;
  std::vector<NodeIndex> members_;
};

NodeSubset all_nodes(const Graph& g);

/// Fraction of node pairs joined by an edge, 2m / (n(n-1)).
/// Throws DegenerateError when n < 2.
double estimate_edge_density(const Graph& g);

/// Subgraph on `s`, relabeled 0..|s|-1 in member order. Labels carry through.
Graph induced_subgraph(const Graph& g, const NodeSubset& s);
Graph induced_subgraph(const Graph& g, std::span<const NodeIndex> sorted_members);

struct IsolatedRemoval {
  Graph graph;
  /// new_to_old[k] is the original index of node k in `graph`.
  std::vector<NodeIndex> new_to_old;
  /// Original indices of the removed zero-degree nodes.
  std::vector<NodeIndex> removed;
};

IsolatedRemoval remove_isolated_nodes(const Graph& g);

}  // namespace twsplit
