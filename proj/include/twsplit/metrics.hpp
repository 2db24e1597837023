#pragma once

#include <span>
#include <vector>

#include "twsplit/graph.hpp"
#include "twsplit/partition.hpp"

namespace twsplit {

/// Adjusted Rand index of two flat labelings of the same nodes. Label values
/// are arbitrary ids. Throws InputError when the lengths differ.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct FScore {
  double recall = 0.0;
  double precision = 0.0;
  double f = 0.0;
};

/// Recall |C n C'| / |C|, precision |C n C'| / |C'| and their harmonic mean.
/// Inputs need not be sorted; duplicates count once. Throws InputError on an
/// empty set.
FScore cluster_f_measure(std::span<const NodeIndex> truth, std::span<const NodeIndex> found);

/// Size-weighted mean over truth sets of the best F against the member set of
/// any tree node, internal nodes included.
double hierarchical_f_measure(const std::vector<std::vector<NodeIndex>>& truth,
                              const ClusterTree& tree);

}  // namespace twsplit
