#pragma once

#include <span>
#include <vector>

#include "coembed/graph.hpp"
#include "coembed/meanshift.hpp"
#include "coembed/types.hpp"

namespace coembed {

/// An item's (or cluster's) edge-fraction vector over the feature clusters.
using CompressedDescriptor = Vector;

/// Fraction of sample s's edges landing in each feature cluster.
/// Throws DataError when the sample has no edges.
CompressedDescriptor compress_sample(const GraphView& g, int s,
                                     const Clustering& feature_clusters);

/// Pooled edge fractions of a sample cluster over the feature clusters
/// (degree-weighted, not the mean of member descriptors).
/// Throws DataError when the members have no edges at all.
CompressedDescriptor compress_cluster(const GraphView& g,
                                      std::span<const int> members,
                                      const Clustering& feature_clusters);

/// 1-based rank of the true cluster when candidates are sorted by ascending
/// smoothed KL(q_s || q_C); ties broken by larger cluster then lower id.
int retrieval_rank(const CompressedDescriptor& q_s,
                   const std::vector<CompressedDescriptor>& cluster_descriptors,
                   const std::vector<int>& cluster_sizes, int true_cluster,
                   double epsilon = 1e-10);

/// Mean reciprocal rank: mean over items of 1/rank.
double mean_retrieval_rank(const std::vector<int>& ranks);

/// Size entropy of the partition in bits.
double partition_entropy(const Clustering& clusters);

/// 2^entropy: the effective number of clusters, in [1, n_clusters].
double effective_clusters(const Clustering& clusters);

/// max(0, 1 - KL(q_s || q_C) / H(q_s)), natural logs, smoothed; 1 when both
/// the entropy and the divergence are degenerate (below 1e-12), 0 when only
/// the entropy is.
double representativeness(const CompressedDescriptor& q_s,
                          const CompressedDescriptor& q_C,
                          double epsilon = 1e-10);

struct ScoredItem {
  int item = 0;
  double score = 0.0;
};

/// Members of a cluster sorted by descending representativeness against the
/// cluster descriptor, ties by higher degree then lower index; the first n.
std::vector<ScoredItem> top_representative_items(const GraphView& g,
                                                 std::span<const int> members,
                                                 const Clustering& feature_clusters,
                                                 int n,
                                                 double epsilon = 1e-10);

/// One-directional smoothed KL(a || b) in nats, same smoothing as
/// jeffrey_kl; the divergence used by retrieval and representativeness.
double smoothed_kl(const CompressedDescriptor& a, const CompressedDescriptor& b,
                   double epsilon = 1e-10);

struct RetrievalReport {
  std::vector<int> ranks;
  double mrr = 0.0;
};

/// Cluster-retrieval task over one direction: every sample's compressed
/// descriptor is ranked against all sample-cluster descriptors and the rank
/// of its own cluster is scored.
RetrievalReport cluster_retrieval(const GraphView& g,
                                  const Clustering& sample_clusters,
                                  const Clustering& feature_clusters,
                                  double epsilon = 1e-10);

} // namespace coembed
