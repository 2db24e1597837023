#include "twsplit/random_models.hpp"

#include <algorithm>
#include <numeric>

#include "twsplit/error.hpp"
#include "twsplit/rng.hpp"

namespace twsplit {

std::size_t SbmParams::num_nodes() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void SbmParams::validate() const {
  const auto k = static_cast<Eigen::Index>(block_sizes.size());
  if (k == 0) throw InputError("blockmodel needs at least one block");
  if (probabilities.rows() != k || probabilities.cols() != k) {
    throw InputError("block probability matrix must be " + std::to_string(k) + "x" +
                     std::to_string(k));
  }
  for (std::size_t s : block_sizes) {
    if (s == 0) throw InputError("block sizes must be positive");
  }
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const double v = probabilities(a, b);
      if (!(v >= 0.0 && v <= 1.0)) throw InputError("block probabilities must lie in [0, 1]");
      if (v != probabilities(b, a)) throw InputError("block probability matrix must be symmetric");
    }
  }
}

Graph sample_er(const ErParams& params, std::uint64_t seed) {
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  const std::size_t n = params.n;
  const CounterRng rng(seed);
  std::vector<Edge> edges;
  if (n >= 2) {
    edges.reserve(static_cast<std::size_t>(params.p * static_cast<double>(n * (n - 1) / 2) * 1.05) + 16);
  }
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++counter) {
      if (rng.uniform(counter) < params.p) {
        edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j)});
      }
    }
  }
  return build_graph_from_sorted(n, edges);
}

SbmSample sample_sbm(const SbmParams& params, std::uint64_t seed, bool shuffle_labels) {
  params.validate();
  const std::size_t n = params.num_nodes();
  std::vector<int> block(n);
  {
    std::size_t pos = 0;
    for (std::size_t b = 0; b < params.block_sizes.size(); ++b) {
      std::fill_n(block.begin() + static_cast<std::ptrdiff_t>(pos), params.block_sizes[b], static_cast<int>(b));
      pos += params.block_sizes[b];
    }
  }
  const CounterRng rng(seed);
  std::vector<Edge> edges;
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++counter) {
      if (rng.uniform(counter) < params.probabilities(block[i], block[j])) {
        edges.push_back({static_cast<NodeIndex>(i), static_cast<NodeIndex>(j)});
      }
    }
  }
  if (!shuffle_labels) {
    return {build_graph_from_sorted(n, edges), std::move(block)};
  }
  // Relabel through a seeded permutation drawn from an independent stream.
  std::vector<NodeIndex> perm(n);
  std::iota(perm.begin(), perm.end(), NodeIndex{0});
  SplitMix64 engine(derive_seed(seed, 0x5348554646ULL));
  std::shuffle(perm.begin(), perm.end(), engine);
  for (Edge& e : edges) e = {perm[e.u], perm[e.v]};
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[perm[i]] = block[i];
  return {build_graph(n, edges), std::move(labels)};
}

GoeSample sample_goe(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("GOE size must be positive");
  const CounterRng rng(seed);
  GoeSample out{n, Eigen::MatrixXd(n, n)};
  const double sqrt2 = std::sqrt(2.0);
  // Counters [0, n) feed the diagonal, the rest follow upper-triangle order.
  for (std::size_t i = 0; i < n; ++i) {
    out.entries(i, i) = sqrt2 * rng.normal(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = rng.normal(n + pair_index(n, i, j));
      out.entries(i, j) = z;
      out.entries(j, i) = z;
    }
  }
  return out;
}

}  // namespace twsplit
