#include "coembed/eval.hpp"

#include <algorithm>
#include <cmath>

namespace coembed {

namespace {

void check_feature_cover(const GraphView& g, const Clustering& feature_clusters) {
  if (static_cast<int>(feature_clusters.labels.size()) != g.n_features())
    throw DataError("feature clustering does not cover the feature side");
}

} // namespace

CompressedDescriptor compress_sample(const GraphView& g, int s,
                                     const Clustering& feature_clusters) {
  check_feature_cover(g, feature_clusters);
  auto feats = g.features_of(s);
  if (feats.empty())
    throw DataError("sample " + g.sample_label(s) +
                    " has no edges; descriptor undefined");
  CompressedDescriptor q = Vector::Zero(feature_clusters.n_clusters);
  for (int f : feats) q(feature_clusters.labels[f]) += 1.0;
  q /= static_cast<double>(feats.size());
  return q;
}

CompressedDescriptor compress_cluster(const GraphView& g,
                                      std::span<const int> members,
                                      const Clustering& feature_clusters) {
  check_feature_cover(g, feature_clusters);
  CompressedDescriptor q = Vector::Zero(feature_clusters.n_clusters);
  double total = 0.0;
  for (int s : members)
    for (int f : g.features_of(s)) {
      q(feature_clusters.labels[f]) += 1.0;
      total += 1.0;
    }
  if (total == 0.0) throw DataError("cluster has no edges; descriptor undefined");
  q /= total;
  return q;
}

double smoothed_kl(const CompressedDescriptor& a, const CompressedDescriptor& b,
                   double epsilon) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double norm = 1.0 + epsilon * static_cast<double>(a.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double pa = (a(i) + epsilon) / norm;
    const double pb = (b(i) + epsilon) / norm;
    acc += pa * std::log(pa / pb);
  }
  return std::max(acc, 0.0);
}

int retrieval_rank(const CompressedDescriptor& q_s,
                   const std::vector<CompressedDescriptor>& cluster_descriptors,
                   const std::vector<int>& cluster_sizes, int true_cluster,
                   double epsilon) {
  const int k = static_cast<int>(cluster_descriptors.size());
  if (k < 1 || cluster_sizes.size() != cluster_descriptors.size())
    throw std::invalid_argument("descriptor/size list mismatch");
  if (true_cluster < 0 || true_cluster >= k)
    throw std::invalid_argument("true_cluster out of range");

  std::vector<std::pair<double, int>> order(k);
  for (int c = 0; c < k; ++c)
    order[c] = {smoothed_kl(q_s, cluster_descriptors[c], epsilon), c};
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    if (cluster_sizes[x.second] != cluster_sizes[y.second])
      return cluster_sizes[x.second] > cluster_sizes[y.second];
    return x.second < y.second;
  });
  for (int pos = 0; pos < k; ++pos)
    if (order[pos].second == true_cluster) return pos + 1;
  return k; // unreachable
}

double mean_retrieval_rank(const std::vector<int>& ranks) {
  if (ranks.empty()) throw std::invalid_argument("no ranks");
  double acc = 0.0;
  for (int r : ranks) {
    if (r < 1) throw std::invalid_argument("ranks are 1-based");
    acc += 1.0 / static_cast<double>(r);
  }
  return acc / static_cast<double>(ranks.size());
}

RetrievalReport cluster_retrieval(const GraphView& g,
                                  const Clustering& sample_clusters,
                                  const Clustering& feature_clusters,
                                  double epsilon) {
  if (static_cast<int>(sample_clusters.labels.size()) != g.n_samples())
    throw DataError("sample clustering does not cover the sample side");
  std::vector<CompressedDescriptor> descriptors;
  const std::vector<int> sizes = sample_clusters.sizes();
  for (int c = 0; c < sample_clusters.n_clusters; ++c) {
    const std::vector<int> members = sample_clusters.members(c);
    descriptors.push_back(compress_cluster(g, members, feature_clusters));
  }
  RetrievalReport out;
  for (int s = 0; s < g.n_samples(); ++s) {
    const CompressedDescriptor q = compress_sample(g, s, feature_clusters);
    out.ranks.push_back(retrieval_rank(q, descriptors, sizes,
                                       sample_clusters.labels[s], epsilon));
  }
  out.mrr = mean_retrieval_rank(out.ranks);
  return out;
}

double partition_entropy(const Clustering& clusters) {
  if (clusters.labels.empty()) throw std::invalid_argument("empty clustering");
  const double n = static_cast<double>(clusters.labels.size());
  double h = 0.0;
  for (int size : clusters.sizes()) {
    if (size == 0) continue;
    const double pr = size / n;
    h -= pr * std::log2(pr);
  }
  return h;
}

double effective_clusters(const Clustering& clusters) {
  return std::exp2(partition_entropy(clusters));
}

double representativeness(const CompressedDescriptor& q_s,
                          const CompressedDescriptor& q_C, double epsilon) {
  const double kl = smoothed_kl(q_s, q_C, epsilon);
  const double norm = 1.0 + epsilon * static_cast<double>(q_s.size());
  double h = 0.0;
  for (Eigen::Index i = 0; i < q_s.size(); ++i) {
    const double p = (q_s(i) + epsilon) / norm;
    h -= p * std::log(p);
  }
  if (h < 1e-12) return kl < 1e-12 ? 1.0 : 0.0;
  return std::max(0.0, 1.0 - kl / h);
}

std::vector<ScoredItem> top_representative_items(const GraphView& g,
                                                 std::span<const int> members,
                                                 const Clustering& feature_clusters,
                                                 int n, double epsilon) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const CompressedDescriptor q_C = compress_cluster(g, members, feature_clusters);

  std::vector<ScoredItem> scored;
  scored.reserve(members.size());
  for (int s : members)
    scored.push_back({s, representativeness(compress_sample(g, s, feature_clusters),
                                            q_C, epsilon)});
  std::sort(scored.begin(), scored.end(), [&](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    const int da = g.sample_degree(a.item), db = g.sample_degree(b.item);
    if (da != db) return da > db;
    return a.item < b.item;
  });
  if (static_cast<int>(scored.size()) > n) scored.resize(n);
  return scored;
}

} // namespace coembed
