#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "twsplit/graph.hpp"
#include "twsplit/hypothesis_test.hpp"
#include "twsplit/partition.hpp"
#include "twsplit/random_models.hpp"

namespace twsplit {

using Json = nlohmann::json;

struct LoadedGraph {
  Graph graph;
  BuildDiagnostics diagnostics;
};

/// Edge list: two whitespace-separated ids per line; '#' lines and blank
/// lines are skipped. Ids become dense indices in numeric order when every id
/// is an integer, otherwise in order of first appearance. The ids are kept as
/// node labels.
LoadedGraph read_edge_list(std::istream& in, const std::string& source = "<stream>");
LoadedGraph read_edge_list_file(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);

/// Maps external ids to dense indices.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(const std::vector<std::string>& ids);
  /// Identity map over "0".."n-1" for unlabeled graphs.
  static IdMap for_graph(const Graph& g);

  std::optional<NodeIndex> find(const std::string& id) const;
  /// Throws InputError naming `what` for an unknown id.
  NodeIndex at(const std::string& id, const std::string& what) const;
  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(NodeIndex i) const { return ids_.at(i); }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
};

/// One truth cluster per line, whitespace-separated external ids. Sets may
/// overlap and need not cover the graph.
std::vector<std::vector<std::string>> read_truth_sets(std::istream& in);

/// "node cluster" pairs, one per line.
std::vector<std::pair<std::string, std::string>> read_flat_labels(std::istream& in);

/// key = value lines; '#' starts a comment. Later keys override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& source = "<stream>");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key) const;
  std::size_t get_size_or(const std::string& key, std::size_t fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<std::string> get_words(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  const std::string& source() const noexcept { return source_; }

 private:
  std::map<std::string, std::string> values_;
  std::string source_;
};

/// ER or SBM model from a config with either `n` and `p`, or `block_sizes`
/// and `B` (row-major).
SbmParams model_from_config(const KeyValueConfig& cfg);

Json to_json(const TestReport& r);

/// {id, size, depth, p_hat, p_value, theta, stop_reason, split, members, children};
/// members (external ids) only on leaves, split only on internal nodes.
Json tree_to_json(const ClusterTree& t, const Graph& g);

struct LoadedTree {
  ClusterTree tree;
  /// External ids of the tree's universe; tree members index into it.
  IdMap ids;
};

/// Inverse of tree_to_json. Internal members are rebuilt as the union of the
/// children. Without `ids`, the universe is the set of leaf ids, ordered as in
/// read_edge_list.
LoadedTree tree_from_json(const Json& j, const IdMap* ids = nullptr);

/// Ordering output: one external id per line, and a CSV of block extents.
void write_permutation(std::ostream& out, const DensityOrdering& d, const Graph& g);
void write_blocks_csv(std::ostream& out, const DensityOrdering& d);

/// FNV-1a 64-bit digest of a file, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace twsplit
