#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coembed/diffusion.hpp"
#include "coembed/eval.hpp"
#include "coembed/graph.hpp"
#include "coembed/tsne.hpp"
#include "coembed/types.hpp"

namespace coembed {

struct CoembedConfig {
  /// Unset selects default_perplexity(n) for the side.
  std::optional<double> perp_resources;
  std::optional<double> perp_tags;
  /// Per-side iterations; the alternation runs 2 * k_iterations steps.
  int k_iterations = 8;
  int dim = 2;
  /// Unset selects round(perplexity) of the embedded side.
  std::optional<int> stability_neighbors;
  /// When set, the loop stops early once both sides' latest mean stability
  /// reaches the threshold.
  std::optional<double> stability_threshold;
  std::uint64_t seed = 0;
  bool weighted = false;
  WeightScheme scheme = WeightScheme::PerDocumentTf;
  double kl_epsilon = 1e-10;
  /// max_iter / exaggeration / learning-rate knobs for the inner t-SNE runs
  /// (perplexity and seed are managed per step).
  TsneConfig tsne;
};

struct CoembedStep {
  int step = 0; // 1-based, matching the alternation count
  bool resources_embedded = false;
  double mean_stability = 0.0;
  double final_objective = 0.0;
  double bandwidth = 0.0;
  Embedding embedding;
};

struct CoembedResult {
  Embedding resources;
  Embedding tags;
  std::vector<CoembedStep> steps;

  std::vector<double> stability_trace() const;
  std::vector<double> objective_trace() const;
};

/// Rank-d SVD of the binary incidence matrix; resources take the left
/// singular vectors and tags the right ones, each scaled by the singular
/// values, with a deterministic per-column sign convention.
std::pair<Embedding, Embedding> svd_init(const BipartiteGraph& g, int dim,
                                         std::uint64_t seed = 0);

/// The alternating co-embedding loop: starting from the SVD initialization,
/// each step estimates the feature-side bandwidth, diffuses feature mass
/// into sample probability vectors, builds the Jeffrey-KL divergence matrix
/// and re-embeds the sample side with t-SNE warm-started from its previous
/// coordinates; then the roles are exchanged. Resources are embedded on odd
/// steps. Deterministic for a fixed config.
CoembedResult co_embed(const BipartiteGraph& g, const CoembedConfig& cfg);

struct AssignmentResult {
  /// Cluster label per item; -1 marks an unassignable item.
  std::vector<int> labels;
  std::vector<int> unassignable;
};

/// Held-out assignment: each sample of the view is compressed into its
/// feature-cluster fractions and assigned to the cluster descriptor
/// minimizing KL(q_s || q_C); ties toward the larger cluster, then the
/// lower id. Items without edges are reported unassignable.
AssignmentResult assign_to_clusters(
    const GraphView& new_items,
    const std::vector<CompressedDescriptor>& cluster_descriptors,
    const std::vector<int>& cluster_sizes, const Clustering& feature_clusters,
    double epsilon = 1e-10);

} // namespace coembed
