#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "twsplit/graph.hpp"

namespace twsplit {

struct ErParams {
  std::size_t n = 0;
  double p = 0.0;
};

/// Stochastic blockmodel with contiguous blocks: block 0 holds nodes
/// [0, n_0), block 1 holds [n_0, n_0 + n_1), and so on.
struct SbmParams {
  std::vector<std::size_t> block_sizes;
  /// k x k symmetric matrix of edge probabilities.
  Eigen::MatrixXd probabilities;

  std::size_t num_nodes() const;
  std::size_t num_blocks() const { return block_sizes.size(); }
  /// Throws InputError unless sizes are positive and B is symmetric in [0, 1].
  void validate() const;
};

struct GoeSample {
  std::size_t n = 0;
  Eigen::MatrixXd entries;
};

struct SbmSample {
  Graph graph;
  std::vector<int> true_labels;
};

/// Erdos-Renyi G(n, p). Pair (i, j) is an edge iff draw number pair_index(i, j)
/// of the seed's stream is below p, so the sample is a pure function of
/// (params, seed) and samples at different p are coupled.
Graph sample_er(const ErParams& params, std::uint64_t seed);

/// SBM sample with the same per-pair draw scheme as sample_er; a one-block
/// model reproduces sample_er exactly for the same seed.
/// With `shuffle_labels`, node ids are permuted so blocks are not contiguous.
SbmSample sample_sbm(const SbmParams& params, std::uint64_t seed, bool shuffle_labels = false);

/// GOE matrix: off-diagonal N(0, 1), diagonal N(0, 2).
GoeSample sample_goe(std::size_t n, std::uint64_t seed);

/// Position of unordered pair (i, j), i < j, in row-major upper-triangle order.
constexpr std::uint64_t pair_index(std::uint64_t n, std::uint64_t i, std::uint64_t j) noexcept {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

}  // namespace twsplit
