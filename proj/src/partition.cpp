#include "twsplit/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "twsplit/error.hpp"
#include "twsplit/rng.hpp"

namespace twsplit {

namespace {

struct NamedReason {
  StopReason reason;
  std::string_view name;
};

constexpr NamedReason kReasons[] = {
    {StopReason::None, "none"},
    {StopReason::NotSignificant, "not_significant"},
    {StopReason::MinSize, "min_size"},
    {StopReason::TooSmall, "too_small"},
    {StopReason::DegenerateDensity, "degenerate_density"},
    {StopReason::DegenerateBootstrap, "degenerate_bootstrap"},
    {StopReason::SolverFailure, "solver_failure"},
    {StopReason::Isolated, "isolated"},
    {StopReason::UnbalancedSplit, "unbalanced_split"},
};

}  // namespace

std::string_view to_string(StopReason r) {
  for (const auto& [reason, name] : kReasons) {
    if (reason == r) return name;
  }
  return "none";
}

StopReason parse_stop_reason(std::string_view s) {
  for (const auto& [reason, name] : kReasons) {
    if (name == s) return reason;
  }
  throw InputError("unknown stop reason '" + std::string(s) + "'");
}

std::string_view to_string(SplitKind k) { return k == SplitKind::Spectral ? "spectral" : "isolated"; }

SplitKind parse_split_kind(std::string_view s) {
  if (s == "spectral") return SplitKind::Spectral;
  if (s == "isolated") return SplitKind::Isolated;
  throw InputError("unknown split kind '" + std::string(s) + "'");
}

void PartitionConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  if (min_size == 1) throw InputError("min_size must be 0 (disabled) or at least 2");
  test.validate();
}

namespace {

Bipartition median_split(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeIndex> first(n / 2), second(n - n / 2);
  std::iota(first.begin(), first.end(), NodeIndex{0});
  std::iota(second.begin(), second.end(), static_cast<NodeIndex>(n / 2));
  return {NodeSubset(g, std::move(first)), NodeSubset(g, std::move(second)), true};
}

// Exact 2-means on a line: the optimal clusters are a prefix and a suffix of
// the sorted coordinates, so scan every cut with prefix sums.
std::size_t best_cut(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  std::vector<double> sum(n + 1, 0.0), sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + sorted[i];
    sq[i + 1] = sq[i] + sorted[i] * sorted[i];
  }
  std::size_t best = 1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    const double left = sq[k] - sum[k] * sum[k] / static_cast<double>(k);
    const double rs = sum[n] - sum[k];
    const double right = (sq[n] - sq[k]) - rs * rs / static_cast<double>(n - k);
    if (left + right < best_cost) {
      best_cost = left + right;
      best = k;
    }
  }
  return best;
}

}  // namespace

Bipartition spectral_bipartition(const Graph& g, const RegularizerPolicy& regularizer,
                                 const EigenSolverOptions& solver) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw InputError("bipartition needs at least two nodes");
  if (n == 2) return {NodeSubset(g, {0}), NodeSubset(g, {1}), false};

  const double nd = static_cast<double>(n);
  const double tau = regularizer.kind == RegularizerPolicy::Kind::AverageDegree
                         ? 2.0 * static_cast<double>(g.num_edges()) / nd
                         : regularizer.tau;
  Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(n));
  Eigen::VectorXd top(static_cast<Eigen::Index>(n));
  for (NodeIndex i = 0; i < n; ++i) {
    const double d = static_cast<double>(g.degree(i)) + tau;
    if (!(d > 0.0)) return median_split(g);
    inv_sqrt(i) = 1.0 / std::sqrt(d);
    top(i) = std::sqrt(d);
  }
  top.normalize();
  // D_t^{1/2} 1 is the top eigenvector (eigenvalue 1); shifting it to -1
  // leaves the second eigenvalue on top.
  const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const Eigen::VectorXd z = inv_sqrt.cwiseProduct(x);
    const double rank_one = tau / nd * z.sum();
    for (NodeIndex i = 0; i < n; ++i) {
      double acc = rank_one;
      for (NodeIndex j : g.neighbors(i)) acc += z(j);
      y(i) = inv_sqrt(i) * acc;
    }
    y.noalias() -= 2.0 * top.dot(x) * top;
  };
  const Eigen::VectorXd u = largest_eigenpair(n, op, solver).vector;

  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return u(a) < u(b); });
  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = u(order[k]);
  if (sorted.back() - sorted.front() <= 1e-12) return median_split(g);

  const std::size_t cut = best_cut(sorted);
  std::vector<NodeIndex> low(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<NodeIndex> high(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
  NodeSubset a(g, std::move(low));
  NodeSubset b(g, std::move(high));
  if (b.members().front() == 0) std::swap(a, b);
  return {std::move(a), std::move(b), false};
}

namespace {

std::vector<NodeIndex> lift(const std::vector<NodeIndex>& members, const std::vector<NodeIndex>& local) {
  std::vector<NodeIndex> out;
  out.reserve(local.size());
  for (NodeIndex k : local) out.push_back(members[k]);
  return out;
}

ClusterTree make_leaf(std::vector<NodeIndex> members, double p_hat, StopReason reason, int depth) {
  ClusterTree t;
  t.members = std::move(members);
  t.p_hat = p_hat;
  t.stop_reason = reason;
  t.depth = depth;
  return t;
}

// Zero-degree nodes become singleton leaves; groups are halved until they are.
ClusterTree isolated_group(std::vector<NodeIndex> members, int depth) {
  if (members.size() == 1) return make_leaf(std::move(members), 0.0, StopReason::Isolated, depth);
  ClusterTree t;
  t.depth = depth;
  t.split = SplitKind::Isolated;
  const auto half = static_cast<std::ptrdiff_t>(members.size() / 2);
  t.children.push_back(isolated_group({members.begin(), members.begin() + half}, depth + 1));
  t.children.push_back(isolated_group({members.begin() + half, members.end()}, depth + 1));
  t.members = std::move(members);
  return t;
}

class Recursion {
 public:
  explicit Recursion(const PartitionConfig& cfg) : cfg_(cfg) {}

  ClusterTree build(const Graph& g, std::vector<NodeIndex> members, std::uint64_t seed, int depth) const {
    const std::size_t n = members.size();
    const double p_hat = n >= 2 ? estimate_edge_density(g) : 0.0;
    if (n == 0) return make_leaf({}, 0.0, StopReason::DegenerateDensity, depth);
    if (n < 2) return make_leaf(std::move(members), p_hat, StopReason::TooSmall, depth);
    if (cfg_.min_size > 0 && n < cfg_.min_size) {
      return make_leaf(std::move(members), p_hat, StopReason::MinSize, depth);
    }
    if (!(p_hat > 0.0 && p_hat < 1.0)) {
      return make_leaf(std::move(members), p_hat, StopReason::DegenerateDensity, depth);
    }

    IsolatedRemoval stripped = remove_isolated_nodes(g);
    if (!stripped.removed.empty()) {
      ClusterTree t;
      t.p_hat = p_hat;
      t.depth = depth;
      t.split = SplitKind::Isolated;
      t.children.push_back(build(stripped.graph, lift(members, stripped.new_to_old),
                                 derive_seed(seed, 0), depth + 1));
      t.children.push_back(isolated_group(lift(members, stripped.removed), depth + 1));
      t.members = std::move(members);
      return t;
    }

    TestConfig test_cfg = cfg_.test;
    test_cfg.seed = derive_seed(seed, 2);
    TestReport report;
    try {
      report = test_graph(g, test_cfg);
    } catch (const DegenerateError&) {
      return make_leaf(std::move(members), p_hat, StopReason::DegenerateBootstrap, depth);
    } catch (const SolverError&) {
      return make_leaf(std::move(members), p_hat, StopReason::SolverFailure, depth);
    }

    ClusterTree t;
    t.p_hat = p_hat;
    t.depth = depth;
    t.p_value = report.p_value;
    t.theta = report.theta;
    if (report.p_value >= cfg_.alpha) {
      t.stop_reason = StopReason::NotSignificant;
      t.members = std::move(members);
      return t;
    }

    Bipartition parts;
    try {
      parts = spectral_bipartition(g, cfg_.regularizer, cfg_.test.solver);
    } catch (const SolverError&) {
      t.stop_reason = StopReason::SolverFailure;
      t.members = std::move(members);
      return t;
    }
    if (parts.first.size() < 2 || parts.second.size() < 2) {
      t.stop_reason = StopReason::UnbalancedSplit;
      t.members = std::move(members);
      return t;
    }
    t.split = SplitKind::Spectral;
    t.children.push_back(build(induced_subgraph(g, parts.first), lift(members, parts.first.members()),
                               derive_seed(seed, 0), depth + 1));
    t.children.push_back(build(induced_subgraph(g, parts.second), lift(members, parts.second.members()),
                               derive_seed(seed, 1), depth + 1));
    t.members = std::move(members);
    return t;
  }

 private:
  const PartitionConfig& cfg_;
};

void assign_ids(ClusterTree& t, int& next) {
  t.node_id = next++;
  for (ClusterTree& c : t.children) assign_ids(c, next);
}

}  // namespace

ClusterTree recursive_bipartition(const Graph& g, const PartitionConfig& cfg) {
  cfg.validate();
  std::vector<NodeIndex> members(g.num_nodes());
  std::iota(members.begin(), members.end(), NodeIndex{0});
  ClusterTree root = Recursion(cfg).build(g, std::move(members), cfg.test.seed, 0);
  int next = 0;
  assign_ids(root, next);
  return root;
}

std::vector<std::vector<NodeIndex>> flatten_leaves(const ClusterTree& t) {
  std::vector<std::vector<NodeIndex>> out;
  for_each_node(t, [&](const ClusterTree& node) {
    if (node.is_leaf()) out.push_back(node.members);
  });
  return out;
}

std::vector<int> partition_labels(const std::vector<std::vector<NodeIndex>>& parts, std::size_t n) {
  std::vector<int> labels(n, -1);
  for (std::size_t c = 0; c < parts.size(); ++c) {
    for (NodeIndex i : parts[c]) {
      if (i >= n) throw InputError("partition member " + std::to_string(i) + " is out of range");
      if (labels[i] != -1) throw InputError("node " + std::to_string(i) + " appears in two clusters");
      labels[i] = static_cast<int>(c);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw InputError("partition does not cover every node");
  }
  return labels;
}

namespace {

void order_subtree(const ClusterTree& t, DensityOrdering& out) {
  const std::size_t slot = out.blocks.size();
  out.blocks.push_back({out.permutation.size(), 0, t.depth, t.p_hat, t.node_id});
  if (t.is_leaf()) {
    out.permutation.insert(out.permutation.end(), t.members.begin(), t.members.end());
  } else {
    for (const ClusterTree& c : t.children) order_subtree(c, out);
  }
  out.blocks[slot].end = out.permutation.size();
}

}  // namespace

DensityOrdering density_ordering(const ClusterTree& t) {
  DensityOrdering out;
  order_subtree(t, out);
  return out;
}

std::size_t count_leaves(const ClusterTree& t) {
  std::size_t leaves = 0;
  for_each_node(t, [&](const ClusterTree& node) { leaves += node.is_leaf(); });
  return leaves;
}

namespace {

void check_node(const ClusterTree& t, int depth, std::set<int>& ids, std::vector<std::string>& problems) {
  const std::string where = "node " + std::to_string(t.node_id);
  if (!ids.insert(t.node_id).second) problems.push_back(where + ": duplicate id");
  if (t.depth != depth) problems.push_back(where + ": depth " + std::to_string(t.depth) + ", expected " + std::to_string(depth));
  if (t.members.empty() && depth > 0) problems.push_back(where + ": no members");
  if (!std::is_sorted(t.members.begin(), t.members.end()) ||
      std::adjacent_find(t.members.begin(), t.members.end()) != t.members.end()) {
    problems.push_back(where + ": members not sorted and distinct");
  }
  if (t.p_value && !(*t.p_value >= 0.0 && *t.p_value <= 1.0)) problems.push_back(where + ": p-value outside [0, 1]");
  if (t.is_leaf()) {
    if (t.stop_reason == StopReason::None) problems.push_back(where + ": leaf without a stop reason");
    return;
  }
  if (t.stop_reason != StopReason::None) problems.push_back(where + ": internal node with a stop reason");
  if (t.children.size() != 2) {
    problems.push_back(where + ": has " + std::to_string(t.children.size()) + " children, expected 2");
  }
  std::vector<NodeIndex> merged;
  for (const ClusterTree& c : t.children) {
    if (c.members.empty()) problems.push_back(where + ": empty child");
    merged.insert(merged.end(), c.members.begin(), c.members.end());
  }
  std::sort(merged.begin(), merged.end());
  if (merged != t.members) problems.push_back(where + ": children do not partition the node");
  for (const ClusterTree& c : t.children) check_node(c, depth + 1, ids, problems);
}

}  // namespace

std::vector<std::string> validate_tree(const ClusterTree& t, std::size_t n) {
  std::vector<std::string> problems;
  std::vector<NodeIndex> universe(n);
  std::iota(universe.begin(), universe.end(), NodeIndex{0});
  if (t.members != universe && n > 0) problems.push_back("root does not cover all " + std::to_string(n) + " nodes");
  std::set<int> ids;
  check_node(t, 0, ids, problems);
  return problems;
}

}  // namespace twsplit
