#pragma once

// Brute-force reference implementations used to pin expected values.
// They deliberately share no code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "coembed/types.hpp"

namespace oracle {

// Plain two-loop KL with additive smoothing, one direction.
inline double kl_smoothed(const std::vector<double>& a,
                          const std::vector<double>& b, double eps) {
  const double za = 1.0 + eps * static_cast<double>(a.size());
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pa = (a[i] + eps) / za;
    const double pb = (b[i] + eps) / za;
    out += pa * std::log(pa / pb);
  }
  return out;
}

inline double jeffrey_kl(const std::vector<double>& a,
                         const std::vector<double>& b, double eps) {
  return 0.5 * (kl_smoothed(a, b, eps) + kl_smoothed(b, a, eps));
}

// KL(P || Q(Y)) by direct double-loop summation over all ordered pairs.
inline double tsne_objective(const coembed::Matrix& P, const coembed::Matrix& Y) {
  const int n = static_cast<int>(Y.rows());
  double sum_w = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum_w += 1.0 / (1.0 + (Y.row(i) - Y.row(j)).squaredNorm());
  double kl = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || P(i, j) <= 0.0) continue;
      const double w = 1.0 / (1.0 + (Y.row(i) - Y.row(j)).squaredNorm());
      kl += P(i, j) * std::log(P(i, j) / (w / sum_w));
    }
  return kl;
}

// Perplexity (2^H2) of one affinity row re-derived from its entries.
inline double row_perplexity(const coembed::Matrix& P_cond, int row) {
  double h = 0.0;
  for (int j = 0; j < P_cond.cols(); ++j) {
    const double p = P_cond(row, j);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::exp2(h);
}

// k nearest neighbors by explicit sort, ties by lower index.
inline std::set<int> knn_set(const coembed::Matrix& Y, int i, int k) {
  std::vector<std::pair<double, int>> d;
  for (int j = 0; j < Y.rows(); ++j)
    if (j != i) d.push_back({(Y.row(i) - Y.row(j)).squaredNorm(), j});
  std::sort(d.begin(), d.end());
  std::set<int> out;
  for (int c = 0; c < k; ++c) out.insert(d[c].second);
  return out;
}

// Shannon entropy of cluster sizes in bits.
inline double partition_entropy(const std::vector<int>& sizes) {
  double total = 0.0;
  for (int s : sizes) total += s;
  double h = 0.0;
  for (int s : sizes) {
    if (s == 0) continue;
    const double pr = s / total;
    h -= pr * std::log2(pr);
  }
  return h;
}

// Best k=2 inertia by exhaustive assignment enumeration (n <= ~20).
inline double best_two_cluster_inertia(const coembed::Matrix& pts) {
  const int n = static_cast<int>(pts.rows());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    coembed::Matrix c0 = coembed::Matrix::Zero(1, pts.cols());
    coembed::Matrix c1 = coembed::Matrix::Zero(1, pts.cols());
    int n0 = 0, n1 = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        c1 += pts.row(i);
        ++n1;
      } else {
        c0 += pts.row(i);
        ++n0;
      }
    }
    c0 /= n0;
    c1 /= n1;
    double inertia = 0.0;
    for (int i = 0; i < n; ++i)
      inertia += (mask & (1u << i)) ? (pts.row(i) - c1).squaredNorm()
                                    : (pts.row(i) - c0).squaredNorm();
    best = std::min(best, inertia);
  }
  return best;
}

// Hubert-Arabie adjusted Rand index between two labelings.
inline double adjusted_rand_index(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  const std::size_t n = a.size();
  std::map<std::pair<int, int>, long> cont;
  std::map<int, long> ra, rb;
  for (std::size_t i = 0; i < n; ++i) {
    ++cont[{a[i], b[i]}];
    ++ra[a[i]];
    ++rb[b[i]];
  }
  auto comb2 = [](long x) { return 0.5 * x * (x - 1); };
  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : cont) sum_ij += comb2(c);
  for (const auto& [key, c] : ra) sum_a += comb2(c);
  for (const auto& [key, c] : rb) sum_b += comb2(c);
  const double total = comb2(static_cast<long>(n));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (sum_ij - expected) / (max_index - expected);
}

// 2D convex-hull membership with tolerance (Andrew monotone chain).
inline bool inside_hull_2d(const coembed::Matrix& pts,
                           const Eigen::RowVector2d& q, double tol) {
  std::vector<std::pair<double, double>> p;
  for (int i = 0; i < pts.rows(); ++i) p.push_back({pts(i, 0), pts(i, 1)});
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  const int n = static_cast<int>(p.size());
  if (n == 1)
    return std::hypot(q(0) - p[0].first, q(1) - p[0].second) <= tol;

  auto cross = [](const std::pair<double, double>& o,
                  const std::pair<double, double>& u,
                  const std::pair<double, double>& v) {
    return (u.first - o.first) * (v.second - o.second) -
           (u.second - o.second) * (v.first - o.first);
  };
  std::vector<std::pair<double, double>> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (int i = 0; i < n; ++i) {
      const auto& pt = p[pass == 0 ? i : n - 1 - i];
      while (hull.size() >= base + 2 &&
             cross(hull[hull.size() - 2], hull.back(), pt) <= 0.0)
        hull.pop_back();
      hull.push_back(pt);
    }
    hull.pop_back();
  }
  if (hull.size() < 3) {
    // degenerate: all points collinear; check distance to the segment set
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Eigen::RowVector2d a(p[i].first, p[i].second);
        const Eigen::RowVector2d b(p[j].first, p[j].second);
        const Eigen::RowVector2d ab = b - a;
        const double t = ab.squaredNorm() > 0.0
                             ? std::clamp<double>((q - a).dot(ab) / ab.squaredNorm(), 0, 1)
                             : 0.0;
        best = std::min(best, (q - (a + t * ab)).norm());
      }
    return best <= tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& u = hull[i];
    const auto& v = hull[(i + 1) % hull.size()];
    const double c = cross(u, v, {q(0), q(1)});
    const double edge = std::hypot(v.first - u.first, v.second - u.second);
    if (c < -tol * std::max(edge, 1e-300)) return false;
  }
  return true;
}

} // namespace oracle
