#include "coembed/meanshift.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace coembed {

std::vector<int> Clustering::members(int cluster) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == cluster) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Clustering::sizes() const {
  std::vector<int> out(n_clusters, 0);
  for (int l : labels) ++out[l];
  return out;
}

Embedding mean_shift(const Embedding& Y, const MeanShiftConfig& cfg) {
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double tol =
      cfg.move_tolerance > 0.0 ? cfg.move_tolerance : 1e-5 * cfg.sigma;
  const int n = static_cast<int>(Y.rows());
  const double inv_two_sigma2 = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  const Vector sq_norms = Y.rowwise().squaredNorm();

  Embedding converged = Y;
  Vector weights(n);
  for (int i = 0; i < n; ++i) {
    Eigen::RowVectorXd z = Y.row(i);
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      // Gaussian weights of the shadow point against the fixed originals;
      // the denominator never vanishes (every weight is positive)
      weights = (-(sq_norms.array() - 2.0 * (Y * z.transpose()).array() +
                   z.squaredNorm())
                      .max(0.0) *
                 inv_two_sigma2)
                    .exp();
      Eigen::RowVectorXd next = (weights.transpose() * Y) / weights.sum();
      const double moved = (next - z).norm();
      z = next;
      if (moved < tol) break;
    }
    converged.row(i) = z;
  }
  return converged;
}

Clustering extract_clusters(const Embedding& converged, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int n = static_cast<int>(converged.rows());

  // union-find over the epsilon-proximity graph
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const double eps2 = epsilon * epsilon;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((converged.row(i) - converged.row(j)).squaredNorm() <= eps2) {
        int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  // components keyed by their lowest member index
  std::vector<int> comp(n);
  std::vector<int> count, first_member;
  std::vector<int> comp_of_root(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(count.size());
      count.push_back(0);
      first_member.push_back(i);
    }
    comp[i] = comp_of_root[r];
    ++count[comp[i]];
  }

  // cluster ids by decreasing size, ties by lowest member index
  const int k = static_cast<int>(count.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return first_member[a] < first_member[b];
  });
  std::vector<int> new_id(k);
  for (int c = 0; c < k; ++c) new_id[order[c]] = c;

  Clustering out;
  out.n_clusters = k;
  out.labels.resize(n);
  out.modes = Matrix::Zero(k, converged.cols());
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < n; ++i) {
    int c = new_id[comp[i]];
    out.labels[i] = c;
    out.modes.row(c) += converged.row(i);
    ++sizes[c];
  }
  for (int c = 0; c < k; ++c) out.modes.row(c) /= static_cast<double>(sizes[c]);
  return out;
}

Clustering cluster_embedding(const Embedding& Y, double perplexity) {
  const Bandwidth bw = estimate_bandwidth(Y, perplexity);
  MeanShiftConfig cfg;
  cfg.sigma = bw.sigma;
  const Embedding converged = mean_shift(Y, cfg);
  const double epsilon = cfg.merge_radius > 0.0 ? cfg.merge_radius : bw.sigma / 4.0;
  return extract_clusters(converged, epsilon);
}

} // namespace coembed
