#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coembed/types.hpp"

namespace coembed {

/// Validated symmetric distance matrix: zero diagonal, non-negative and
/// finite entries, symmetric within 1e-9 relative tolerance.
class DistanceMatrix {
public:
  explicit DistanceMatrix(Matrix values);
  const Matrix& values() const { return values_; }
  int size() const { return static_cast<int>(values_.rows()); }

private:
  Matrix values_;
};

/// Validated joint-probability matrix: symmetric, non-negative, zero
/// diagonal, total mass 1 within 1e-6.
class AffinityMatrix {
public:
  explicit AffinityMatrix(Matrix values);
  const Matrix& values() const { return values_; }
  int size() const { return static_cast<int>(values_.rows()); }

private:
  Matrix values_;
};

struct TsneConfig {
  double perplexity = 30.0;
  int dim = 2;
  int max_iter = 750;
  double early_exaggeration_factor = 12.0;
  int early_exaggeration_iters = 250;
  /// <= 0 selects max(n / 12, 50).
  double learning_rate = 0.0;
  double momentum_initial = 0.5;
  double momentum_final = 0.8;
  int momentum_switch_iter = 250;
  /// Warm starts skip the exaggeration phase by default so a converged
  /// embedding is never torn apart; the alternating pipeline overrides this
  /// to keep consolidating structure across steps.
  bool exaggerate_warm_start = false;
  std::uint64_t seed = 0;
};

struct AffinityResult {
  AffinityMatrix P;
  /// Row-stochastic conditional distributions before symmetrization.
  Matrix conditional;
  /// Rows whose precision search failed and fell back to a uniform
  /// distribution over the off-diagonal entries.
  std::vector<int> fallback_rows;
};

/// Per-row Gaussian affinities over the squared input distances, with the
/// precision of each row tuned by bisection until the conditional
/// distribution's perplexity matches the target, then symmetrized as
/// P = (P_cond + P_cond^T) / (2n).
AffinityResult conditional_affinities(const DistanceMatrix& D, double perplexity);

struct TsneResult {
  Embedding Y;
  /// objective_trace[t] is KL(P || Q) at the coordinates after t gradient
  /// updates (entry 0 is the initial state); always the plain, un-exaggerated
  /// objective.
  std::vector<double> objective_trace;
  std::vector<int> bisection_fallback_rows;
};

/// Exact-gradient t-SNE over a precomputed distance matrix. A provided
/// init warm-starts the descent and skips the early-exaggeration phase so
/// an already-converged embedding is never degraded. Deterministic given
/// seed and init; final coordinates are centered at the origin.
/// Throws NumericalError when the gradient becomes non-finite.
TsneResult tsne_embed(const DistanceMatrix& D, const TsneConfig& cfg,
                      const std::optional<Embedding>& init = {});

/// KL(P || Q(Y)) in nats, with Q the Student-t (one degree of freedom)
/// joint distribution of the embedding.
double kl_objective(const AffinityMatrix& P, const Embedding& Y);

struct StabilityResult {
  Vector per_item;
  double mean = 0.0;
};

/// Per-item Jaccard similarity of the n-nearest-neighbor sets of two
/// embeddings of the same items (Euclidean, ties broken by lower index).
StabilityResult neighborhood_stability(const Embedding& Y_prev,
                                       const Embedding& Y_next, int n_neighbors);

/// Size-based perplexity rule: 15 below 500 items, 30 up to 8000, 60 above;
/// clamped to (n - 1) / 3 when that bound is smaller.
double default_perplexity(int n);

} // namespace coembed
