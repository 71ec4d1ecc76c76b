#include "coembed/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "coembed/svd.hpp"

namespace coembed {

namespace {

std::vector<int> assign_labels(const Matrix& points, const Matrix& centers) {
  std::vector<int> labels(points.rows());
  for (int i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int c = 0; c < centers.rows(); ++c) {
      double d = (points.row(i) - centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    labels[i] = arg;
  }
  return labels;
}

double inertia_of(const Matrix& points, const Matrix& centers,
                  const std::vector<int>& labels) {
  double total = 0.0;
  for (int i = 0; i < points.rows(); ++i)
    total += (points.row(i) - centers.row(labels[i])).squaredNorm();
  return total;
}

KMeansResult lloyd_once(const Matrix& points, int k, int max_iters,
                        std::mt19937_64& rng) {
  const int n = static_cast<int>(points.rows());
  Matrix centers(k, points.cols());

  // k-means++ seeding
  std::uniform_int_distribution<int> uniform(0, n - 1);
  centers.row(0) = points.row(uniform(rng));
  Vector min_d2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = min_d2.sum();
    int pick = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng), acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += min_d2(i);
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = uniform(rng);
    }
    centers.row(c) = points.row(pick);
    min_d2 = min_d2.cwiseMin(
        (points.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> labels = assign_labels(points, centers);
  KMeansResult out;
  out.inertia_trace.push_back(inertia_of(points, centers, labels));
  for (int iter = 0; iter < max_iters; ++iter) {
    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(labels[i]) += points.row(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0) centers.row(c) = sums.row(c) / counts[c];
    // re-seed empty clusters from the point farthest from its own center,
    // never stranding another cluster
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int farthest = -1;
      double best = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[labels[i]] <= 1) continue;
        double d = (points.row(i) - centers.row(labels[i])).squaredNorm();
        if (d > best) {
          best = d;
          farthest = i;
        }
      }
      if (farthest < 0) continue; // nothing movable; leave the center as is
      centers.row(c) = points.row(farthest);
      --counts[labels[farthest]];
      labels[farthest] = c;
      ++counts[c];
    }
    std::vector<int> next = assign_labels(points, centers);
    out.inertia_trace.push_back(inertia_of(points, centers, next));
    if (next == labels) break;
    labels = std::move(next);
  }

  out.inertia = inertia_of(points, centers, labels);
  out.labels = std::move(labels);
  out.centers = std::move(centers);
  return out;
}

} // namespace

KMeansResult kmeans(const Matrix& points, const KMeansConfig& cfg) {
  const int n = static_cast<int>(points.rows());
  if (cfg.k < 1 || cfg.k > n)
    throw std::invalid_argument("k must be in [1, n]");
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be >= 1");

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  std::vector<double> restart_inertias;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    KMeansResult run = lloyd_once(points, cfg.k, cfg.max_iters, rng);
    restart_inertias.push_back(run.inertia);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  best.restart_inertias = std::move(restart_inertias);
  return best;
}

namespace {

/// Normalize raw labels into the Clustering id convention
/// (decreasing size, ties by lowest member index). Modes stay empty.
Clustering to_clustering(const std::vector<int>& raw, int k) {
  std::vector<int> count(k, 0), first(k, -1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    ++count[raw[i]];
    if (first[raw[i]] < 0) first[raw[i]] = static_cast<int>(i);
  }
  std::vector<int> present;
  for (int c = 0; c < k; ++c)
    if (count[c] > 0) present.push_back(c);
  std::sort(present.begin(), present.end(), [&](int a, int b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return first[a] < first[b];
  });
  std::vector<int> new_id(k, -1);
  for (std::size_t c = 0; c < present.size(); ++c)
    new_id[present[c]] = static_cast<int>(c);

  Clustering out;
  out.n_clusters = static_cast<int>(present.size());
  out.labels.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out.labels[i] = new_id[raw[i]];
  out.modes = Matrix(0, 0);
  return out;
}

} // namespace

std::pair<Clustering, Clustering> spectral_cocluster(const BipartiteGraph& g,
                                                     int k_resources, int k_tags,
                                                     const KMeansConfig& cfg) {
  const int nr = g.n_resources();
  const int nt = g.n_tags();
  if (g.n_edges() == 0) throw DataError("empty graph");
  if (k_resources < 1 || k_resources > nr || k_tags < 1 || k_tags > nt)
    throw std::invalid_argument("cluster counts out of range");

  Vector dr(nr), dt(nt);
  for (int r = 0; r < nr; ++r) {
    dr(r) = g.resource_degree(r);
    if (dr(r) == 0.0)
      throw DataError("isolated resource " + g.resource_label(r) +
                      "; filter the graph first");
  }
  for (int t = 0; t < nt; ++t) {
    dt(t) = g.tag_degree(t);
    if (dt(t) == 0.0)
      throw DataError("isolated tag " + g.tag_label(t) +
                      "; filter the graph first");
  }

  const int k_max = std::max(k_resources, k_tags);
  const int pairs = static_cast<int>(std::ceil(std::log2(k_max))) + 1;
  const int rank = std::min(pairs, std::min(nr, nt));

  Vector dr_isqrt = dr.array().rsqrt();
  Vector dt_isqrt = dt.array().rsqrt();
  Matrix An = Matrix::Zero(nr, nt);
  for (const Edge& e : g.edges())
    An(e.resource, e.tag) = dr_isqrt(e.resource) * dt_isqrt(e.tag);

  TruncatedSvd svd = truncated_svd(An, rank, cfg.seed);

  auto side = [&](const Matrix& vectors, const Vector& d_isqrt, int k,
                  std::uint64_t stream) {
    const int n = static_cast<int>(vectors.rows());
    if (k == 1 || rank <= 1) {
      std::vector<int> all(n, 0);
      return to_clustering(all, 1);
    }
    // discard the trivial leading pair, normalize rows by degree
    Matrix feats = d_isqrt.asDiagonal() * vectors.rightCols(rank - 1);
    KMeansConfig kc = cfg;
    kc.k = k;
    kc.seed = mix_seed(cfg.seed, stream);
    KMeansResult km = kmeans(feats, kc);
    return to_clustering(km.labels, k);
  };

  return {side(svd.U, dr_isqrt, k_resources, 1),
          side(svd.V, dt_isqrt, k_tags, 2)};
}

} // namespace coembed
