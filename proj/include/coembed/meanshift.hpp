#pragma once

#include <vector>

#include "coembed/diffusion.hpp"
#include "coembed/types.hpp"

namespace coembed {

/// Partition of one item side with one mode position per cluster.
/// Cluster ids are assigned by decreasing size, ties by lowest member index.
struct Clustering {
  std::vector<int> labels;
  /// One row per cluster; empty (0 rows) when modes are not meaningful
  /// (e.g. spectral clusters).
  Matrix modes;
  int n_clusters = 0;

  std::vector<int> members(int cluster) const;
  std::vector<int> sizes() const;
};

struct MeanShiftConfig {
  double sigma = 0.0;
  /// <= 0 selects sigma / 4.
  double merge_radius = 0.0;
  int max_iters = 300;
  /// <= 0 selects 1e-5 * sigma.
  double move_tolerance = 0.0;
};

/// Iterates each item's shadow point toward its density mode against the
/// fixed original points until it moves less than the tolerance.
Embedding mean_shift(const Embedding& Y, const MeanShiftConfig& cfg);

/// Single-linkage grouping of converged positions at distance threshold
/// epsilon. Modes are the means of the members' converged positions.
Clustering extract_clusters(const Embedding& converged, double epsilon);

/// estimate_bandwidth -> mean_shift -> extract_clusters with defaults; the
/// parameter-free entry point.
Clustering cluster_embedding(const Embedding& Y, double perplexity);

} // namespace coembed
