#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coembed/graph.hpp"
#include "coembed/meanshift.hpp"
#include "coembed/types.hpp"

namespace coembed {

struct KMeansConfig {
  int k = 1;
  int restarts = 10;
  int max_iters = 100;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;
  double inertia = 0.0;
  Matrix centers;
  /// Within-cluster sum of squares after each Lloyd iteration of the
  /// winning restart.
  std::vector<double> inertia_trace;
  /// Final inertia of every restart, in restart order.
  std::vector<double> restart_inertias;
};

/// Lloyd iterations from a k-means++ style seeding, best inertia over
/// `restarts` independent restarts. Empty clusters are re-seeded from the
/// point farthest from its center.
KMeansResult kmeans(const Matrix& points, const KMeansConfig& cfg);

/// Spectral co-clustering of the normalized incidence matrix
/// D1^{-1/2} M D2^{-1/2}: both sides clustered separately by k-means on
/// their degree-normalized singular vectors (the leading trivial pair is
/// discarded).
/// Throws DataError when the graph has an isolated node.
std::pair<Clustering, Clustering> spectral_cocluster(const BipartiteGraph& g,
                                                     int k_resources, int k_tags,
                                                     const KMeansConfig& cfg);

} // namespace coembed
