#pragma once

#include <vector>

#include "coembed/graph.hpp"
#include "coembed/tsne.hpp"
#include "coembed/types.hpp"

namespace coembed {

/// Gaussian kernel width estimated from an embedding.
struct Bandwidth {
  double sigma = 0.0;
  int k_used = 0;
};

/// sigma = median over items of the distance to their k-th nearest
/// neighbor, k = round(perplexity) (half-to-even). The median of an even
/// count is the mean of the two central values.
/// Throws NumericalError when the median is zero (coincident points).
Bandwidth estimate_bandwidth(const Embedding& Y, double perplexity);

/// exp(-|y_i - y_j|^2 / (2 sigma^2))
double gaussian_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& y_i,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y_j,
                       double sigma);

enum class WeightScheme {
  PerDocumentTf, // TF(s,f) / sum_j TF(s_j,f)
  CorpusCount,   // C(s,f) / sum_j C(s_j,f)
};

struct DiffusionResult {
  /// One row per sample, one column per feature; rows sum to 1.
  Matrix probabilities;
  /// Features with no edges at all; they contribute no mass.
  std::vector<int> zero_degree_features;
};

/// Diffused sample representations: each feature f_i of sample s spreads the
/// mass delta(s, f_i) / |f_i| onto every feature location through the
/// Gaussian kernel, and the row is normalized to a distribution. Entries can
/// be nonzero for features the sample is not linked to.
/// Throws DataError when a sample has no edges.
DiffusionResult feature_probabilities(const GraphView& g, const Embedding& Y_F,
                                      const Bandwidth& sigma);

/// Frequency-aware variant replacing delta(s,f)/|f| with a TF- or
/// count-based contribution. Requires per-edge counts.
DiffusionResult weighted_feature_probabilities(const GraphView& g,
                                               const Embedding& Y_F,
                                               const Bandwidth& sigma,
                                               WeightScheme scheme);

/// Symmetrized Kullback-Leibler divergence in nats. Both vectors are
/// smoothed by adding epsilon to every entry and renormalizing, so the
/// result is always finite; it is zero iff the smoothed vectors coincide.
double jeffrey_kl(const Eigen::Ref<const Vector>& p_a,
                  const Eigen::Ref<const Vector>& p_b, double epsilon = 1e-10);

/// All-pairs Jeffrey-KL distances of the rows of a probability matrix;
/// computed on the upper triangle and mirrored.
DistanceMatrix divergence_matrix(const Matrix& probabilities,
                                 double epsilon = 1e-10);

} // namespace coembed
