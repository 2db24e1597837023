#include "twsplit/graph.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "twsplit/error.hpp"

namespace twsplit {

bool Graph::has_edge(NodeIndex i, NodeIndex j) const noexcept {
  const auto nbrs = neighbors(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeIndex i = 0; i < num_nodes(); ++i) {
    for (NodeIndex j : neighbors(i)) {
      if (i < j) out.push_back({i, j});
    }
  }
  return out;
}

std::string Graph::label(NodeIndex i) const {
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

namespace {

void check_labels(std::size_t n, const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != n) {
    throw InputError("label count " + std::to_string(labels.size()) + " does not match node count " +
                     std::to_string(n));
  }
}

}  // namespace

Graph build_graph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels,
                  BuildDiagnostics* diagnostics) {
  check_labels(n, labels);
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      std::ostringstream msg;
      msg << "edge (" << e.u << ", " << e.v << ") has an endpoint outside [0, " << n << ")";
      throw InputError(msg.str());
    }
    if (e.u == e.v) {
      throw InputError("self loop at node " + std::to_string(e.u));
    }
    normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(normalized.begin(), normalized.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  const auto last = std::unique(normalized.begin(), normalized.end());
  if (diagnostics) diagnostics->duplicate_edges += static_cast<std::size_t>(normalized.end() - last);
  normalized.erase(last, normalized.end());
  return build_graph_from_sorted(n, normalized, std::move(labels));
}

Graph build_graph_from_sorted(std::size_t n, std::span<const Edge> edges,
                              std::vector<std::string> labels) {
  check_labels(n, labels);
  Graph g;
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    assert(e.u < e.v && e.v < n);
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - (n > 0 ? 1 : 0));
  // Lexicographic (u, v) order with u < v: scattering the lower endpoint
  // first and the upper endpoint second keeps every row sorted.
  for (const Edge& e : edges) g.adjacency_[cursor[e.v]++] = e.u;
  for (const Edge& e : edges) g.adjacency_[cursor[e.u]++] = e.v;
  g.labels_ = std::move(labels);
  return g;
}

NodeSubset::NodeSubset(const Graph& parent, std::vector<NodeIndex> members)
    : parent_(&parent), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw InputError("node subset contains a repeated node");
  }
  if (!members_.empty() && members_.back() >= parent.num_nodes()) {
    throw InputError("node subset member " + std::to_string(members_.back()) + " is out of range");
  }
}

NodeSubset all_nodes(const Graph& g) {
  std::vector<NodeIndex> members(g.num_nodes());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = static_cast<NodeIndex>(i);
  return NodeSubset(g, std::move(members));
}

double estimate_edge_density(const Graph& g) {
  const double n = static_cast<double>(g.num_nodes());
  if (g.num_nodes() < 2) {
    throw DegenerateError("edge density needs at least two nodes, got " +
                          std::to_string(g.num_nodes()));
  }
  return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

Graph induced_subgraph(const Graph& g, const NodeSubset& s) {
  if (s.parent() != nullptr && s.parent() != &g) {
    throw InputError("node subset belongs to a different graph");
  }
  return induced_subgraph(g, s.members());
}

Graph induced_subgraph(const Graph& g, std::span<const NodeIndex> sorted_members) {
  constexpr auto kAbsent = static_cast<NodeIndex>(-1);
  std::vector<NodeIndex> old_to_new(g.num_nodes(), kAbsent);
  for (std::size_t k = 0; k < sorted_members.size(); ++k) {
    old_to_new[sorted_members[k]] = static_cast<NodeIndex>(k);
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < sorted_members.size(); ++k) {
    for (NodeIndex j : g.neighbors(sorted_members[k])) {
      const NodeIndex mapped = old_to_new[j];
      if (mapped != kAbsent && mapped > k) edges.push_back({static_cast<NodeIndex>(k), mapped});
    }
  }
  // Members are sorted and rows are sorted, so `edges` is already in order.
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(sorted_members.size());
    for (NodeIndex i : sorted_members) labels.push_back(g.labels()[i]);
  }
  return build_graph_from_sorted(sorted_members.size(), edges, std::move(labels));
}

IsolatedRemoval remove_isolated_nodes(const Graph& g) {
  IsolatedRemoval out;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    (g.degree(i) > 0 ? out.new_to_old : out.removed).push_back(i);
  }
  out.graph = out.removed.empty() ? g : induced_subgraph(g, out.new_to_old);
  return out;
}

}  // namespace twsplit
