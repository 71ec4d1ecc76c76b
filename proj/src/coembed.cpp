#include "coembed/coembed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coembed/svd.hpp"

namespace coembed {

std::vector<double> CoembedResult::stability_trace() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const CoembedStep& s : steps) out.push_back(s.mean_stability);
  return out;
}

std::vector<double> CoembedResult::objective_trace() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const CoembedStep& s : steps) out.push_back(s.final_objective);
  return out;
}

namespace {

// Rescale so the median 1-NN distance is 1; SVD output can carry
// near-duplicate rows that would otherwise break the bandwidth estimate.
void normalize_scale(Embedding& Y) {
  const int n = static_cast<int>(Y.rows());
  if (n < 2) return;
  std::vector<double> nn(n);
  for (int i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != i) best = std::min(best, (Y.row(i) - Y.row(j)).squaredNorm());
    nn[i] = std::sqrt(best);
  }
  std::sort(nn.begin(), nn.end());
  double scale = n % 2 == 1 ? nn[n / 2] : 0.5 * (nn[n / 2 - 1] + nn[n / 2]);
  if (scale <= 0.0) {
    // fall back to the smallest positive gap
    auto it = std::find_if(nn.begin(), nn.end(), [](double d) { return d > 0.0; });
    if (it == nn.end()) return; // fully coincident; downstream will refuse
    scale = *it;
  }
  Y /= scale;
}

} // namespace

std::pair<Embedding, Embedding> svd_init(const BipartiteGraph& g, int dim,
                                         std::uint64_t seed) {
  if (g.n_edges() == 0) throw DataError("empty graph");
  if (dim < 1 || dim > std::min(g.n_resources(), g.n_tags()))
    throw std::invalid_argument("dim must be in [1, min(n_resources, n_tags)]");

  Matrix M = Matrix::Zero(g.n_resources(), g.n_tags());
  for (const Edge& e : g.edges()) M(e.resource, e.tag) = 1.0;

  TruncatedSvd svd = truncated_svd(M, dim, seed);
  Embedding resources = svd.U * svd.S.asDiagonal();
  Embedding tags = svd.V * svd.S.asDiagonal();

  // per-side sign convention: the left vectors already satisfy it, the
  // right ones are normalized independently (the embeddings never have to
  // multiply back together)
  for (int c = 0; c < tags.cols(); ++c) {
    int idx = 0;
    tags.col(c).cwiseAbs().maxCoeff(&idx);
    if (tags(idx, c) < 0.0) tags.col(c) = -tags.col(c);
  }
  return {std::move(resources), std::move(tags)};
}

CoembedResult co_embed(const BipartiteGraph& g, const CoembedConfig& cfg) {
  if (cfg.k_iterations < 1)
    throw std::invalid_argument("k_iterations must be >= 1");
  for (int r = 0; r < g.n_resources(); ++r)
    if (g.resource_degree(r) == 0)
      throw DataError("resource " + g.resource_label(r) +
                      " has no edges; filter the graph first");
  for (int t = 0; t < g.n_tags(); ++t)
    if (g.tag_degree(t) == 0)
      throw DataError("tag " + g.tag_label(t) +
                      " has no edges; filter the graph first");

  const double perp_r =
      cfg.perp_resources.value_or(default_perplexity(g.n_resources()));
  const double perp_t = cfg.perp_tags.value_or(default_perplexity(g.n_tags()));

  auto [y_resources, y_tags] = svd_init(g, cfg.dim, mix_seed(cfg.seed, 0));
  normalize_scale(y_resources);
  normalize_scale(y_tags);

  CoembedResult out;
  GraphView view(g); // resources start the role of samples
  const int total_steps = 2 * cfg.k_iterations;

  for (int step = 1; step <= total_steps; ++step) {
    const bool resources_side = !view.tags_as_samples();
    Embedding& y_samples = resources_side ? y_resources : y_tags;
    const Embedding& y_features = resources_side ? y_tags : y_resources;
    const double perp_samples = resources_side ? perp_r : perp_t;
    const double perp_features = resources_side ? perp_t : perp_r;

    try {
      const Bandwidth bw = estimate_bandwidth(y_features, perp_features);
      const DiffusionResult diffusion =
          cfg.weighted
              ? weighted_feature_probabilities(view, y_features, bw, cfg.scheme)
              : feature_probabilities(view, y_features, bw);
      const DistanceMatrix divergences =
          divergence_matrix(diffusion.probabilities, cfg.kl_epsilon);

      TsneConfig tsne_cfg = cfg.tsne;
      tsne_cfg.dim = cfg.dim;
      tsne_cfg.perplexity = perp_samples;
      tsne_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(step));
      TsneResult embedded = tsne_embed(divergences, tsne_cfg, y_samples);

      const int n_neighbors = cfg.stability_neighbors.value_or(
          static_cast<int>(std::nearbyint(perp_samples)));
      const StabilityResult stability =
          neighborhood_stability(y_samples, embedded.Y, n_neighbors);

      y_samples = embedded.Y;
      CoembedStep record;
      record.step = step;
      record.resources_embedded = resources_side;
      record.mean_stability = stability.mean;
      record.final_objective = embedded.objective_trace.back();
      record.bandwidth = bw.sigma;
      record.embedding = y_samples;
      out.steps.push_back(std::move(record));
    } catch (const std::exception& e) {
      throw NumericalError("co-embedding failed at step " +
                           std::to_string(step) + ": " + e.what());
    }

    view = view.transpose();

    if (cfg.stability_threshold && out.steps.size() >= 2) {
      const double last = out.steps[out.steps.size() - 1].mean_stability;
      const double prev = out.steps[out.steps.size() - 2].mean_stability;
      if (last >= *cfg.stability_threshold && prev >= *cfg.stability_threshold)
        break;
    }
  }

  out.resources = std::move(y_resources);
  out.tags = std::move(y_tags);
  return out;
}

AssignmentResult assign_to_clusters(
    const GraphView& new_items,
    const std::vector<CompressedDescriptor>& cluster_descriptors,
    const std::vector<int>& cluster_sizes, const Clustering& feature_clusters,
    double epsilon) {
  if (cluster_descriptors.empty() ||
      cluster_descriptors.size() != cluster_sizes.size())
    throw std::invalid_argument("descriptor/size list mismatch");

  AssignmentResult out;
  out.labels.assign(new_items.n_samples(), -1);
  for (int s = 0; s < new_items.n_samples(); ++s) {
    if (new_items.sample_degree(s) == 0) {
      out.unassignable.push_back(s);
      continue;
    }
    const CompressedDescriptor q =
        compress_sample(new_items, s, feature_clusters);
    int best = -1;
    double best_kl = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cluster_descriptors.size(); ++c) {
      const double kl = smoothed_kl(q, cluster_descriptors[c], epsilon);
      const int ci = static_cast<int>(c);
      // ascending ids, so equal (kl, size) keeps the lower id
      if (kl < best_kl ||
          (kl == best_kl && cluster_sizes[ci] > cluster_sizes[best])) {
        best = ci;
        best_kl = kl;
      }
    }
    out.labels[s] = best;
  }
  return out;
}

} // namespace coembed
