#include "coembed/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace coembed {

Bandwidth estimate_bandwidth(const Embedding& Y, double perplexity) {
  const int n = static_cast<int>(Y.rows());
  const int k = static_cast<int>(std::nearbyint(perplexity)); // half-to-even
  if (k < 1) throw std::invalid_argument("round(perplexity) must be >= 1");
  if (n <= k) throw std::invalid_argument("need more points than neighbors");

  std::vector<double> kth(static_cast<std::size_t>(n));
  std::vector<double> row(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) row[m++] = (Y.row(i) - Y.row(j)).squaredNorm();
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    kth[static_cast<std::size_t>(i)] = std::sqrt(row[static_cast<std::size_t>(k - 1)]);
  }

  std::sort(kth.begin(), kth.end());
  double median = n % 2 == 1 ? kth[static_cast<std::size_t>(n / 2)]
                             : 0.5 * (kth[static_cast<std::size_t>(n / 2 - 1)] +
                                      kth[static_cast<std::size_t>(n / 2)]);
  if (!(median > 0.0))
    throw NumericalError(
        "estimated bandwidth is zero (coincident points); jitter the "
        "embedding or increase the neighbor count");
  return Bandwidth{median, k};
}

double gaussian_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& y_i,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y_j,
                       double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return std::exp(-(y_i - y_j).squaredNorm() / (2.0 * sigma * sigma));
}

namespace {

// Shared mass-spreading loop: `edge_weight(s, idx)` returns the contribution
// factor of the idx-th feature of sample s.
template <typename WeightFn>
DiffusionResult diffuse(const GraphView& g, const Embedding& Y_F, double sigma,
                        WeightFn edge_weight) {
  const int n = g.n_samples();
  const int m = g.n_features();
  if (Y_F.rows() != m)
    throw std::invalid_argument("feature embedding row count mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

  DiffusionResult out;
  for (int f = 0; f < m; ++f)
    if (g.feature_degree(f) == 0) out.zero_degree_features.push_back(f);

  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  const Vector sq_norms = Y_F.rowwise().squaredNorm();

  out.probabilities = Matrix::Zero(n, m);
  Vector kernel_col(m);
  for (int s = 0; s < n; ++s) {
    auto feats = g.features_of(s);
    if (feats.empty())
      throw DataError("sample " + g.sample_label(s) +
                      " has no edges; filter the graph first");
    auto row = out.probabilities.row(s);
    for (std::size_t idx = 0; idx < feats.size(); ++idx) {
      const int fi = feats[idx];
      const double w = edge_weight(s, idx);
      // squared distances from feature fi to every feature location
      kernel_col = sq_norms.array() + sq_norms(fi) -
                   2.0 * (Y_F * Y_F.row(fi).transpose()).array();
      row += (w * (-kernel_col.array().max(0.0) * inv_two_sigma2).exp()).matrix().transpose();
    }
    const double c = row.sum();
    if (!(c > 0.0))
      throw NumericalError("sample " + g.sample_label(s) +
                           ": all kernel contributions underflowed");
    row /= c;
  }
  return out;
}

} // namespace

DiffusionResult feature_probabilities(const GraphView& g, const Embedding& Y_F,
                                      const Bandwidth& sigma) {
  return diffuse(g, Y_F, sigma.sigma, [&](int s, std::size_t idx) {
    const int fi = g.features_of(s)[idx];
    return 1.0 / static_cast<double>(g.feature_degree(fi));
  });
}

DiffusionResult weighted_feature_probabilities(const GraphView& g,
                                               const Embedding& Y_F,
                                               const Bandwidth& sigma,
                                               WeightScheme scheme) {
  if (!g.graph().has_counts())
    throw std::invalid_argument("weighted diffusion requires edge counts");

  const int n = g.n_samples();
  const int m = g.n_features();

  // per-sample count totals, for TF
  std::vector<double> sample_totals(static_cast<std::size_t>(n), 0.0);
  for (int s = 0; s < n; ++s) {
    auto cs = g.counts_of(s);
    double total = 0.0;
    for (std::int64_t c : cs) total += static_cast<double>(c);
    sample_totals[static_cast<std::size_t>(s)] = total;
  }

  // per-feature normalizers: sum over samples of TF or of raw counts
  std::vector<double> feature_norms(static_cast<std::size_t>(m), 0.0);
  for (int s = 0; s < n; ++s) {
    auto feats = g.features_of(s);
    auto cs = g.counts_of(s);
    for (std::size_t idx = 0; idx < feats.size(); ++idx) {
      const double c = static_cast<double>(cs[idx]);
      const double v = scheme == WeightScheme::PerDocumentTf
                           ? c / sample_totals[static_cast<std::size_t>(s)]
                           : c;
      feature_norms[static_cast<std::size_t>(feats[idx])] += v;
    }
  }

  return diffuse(g, Y_F, sigma.sigma, [&, scheme](int s, std::size_t idx) {
    const int fi = g.features_of(s)[idx];
    const double c = static_cast<double>(g.counts_of(s)[idx]);
    const double v = scheme == WeightScheme::PerDocumentTf
                         ? c / sample_totals[static_cast<std::size_t>(s)]
                         : c;
    return v / feature_norms[static_cast<std::size_t>(fi)];
  });
}

namespace {

void check_probability_vector(const Eigen::Ref<const Vector>& p, const char* name) {
  if (p.size() < 1) throw std::invalid_argument(std::string(name) + ": empty");
  if (p.minCoeff() < 0.0)
    throw std::invalid_argument(std::string(name) + ": negative entry");
  if (std::abs(p.sum() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(name) + ": does not sum to 1");
}

} // namespace

double jeffrey_kl(const Eigen::Ref<const Vector>& p_a,
                  const Eigen::Ref<const Vector>& p_b, double epsilon) {
  if (p_a.size() != p_b.size()) throw std::invalid_argument("length mismatch");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  check_probability_vector(p_a, "p_a");
  check_probability_vector(p_b, "p_b");

  const double norm = 1.0 + epsilon * static_cast<double>(p_a.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p_a.size(); ++i) {
    const double a = (p_a(i) + epsilon) / norm;
    const double b = (p_b(i) + epsilon) / norm;
    // (a-b)(log a - log b) = a log(a/b) + b log(b/a); symmetric and >= 0
    acc += (a - b) * (std::log(a) - std::log(b));
  }
  return 0.5 * acc;
}

DistanceMatrix divergence_matrix(const Matrix& probabilities, double epsilon) {
  const int n = static_cast<int>(probabilities.rows());
  if (n < 1) throw std::invalid_argument("empty probability list");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  for (int i = 0; i < n; ++i)
    check_probability_vector(probabilities.row(i).transpose(), "probability row");

  const double norm = 1.0 + epsilon * static_cast<double>(probabilities.cols());
  Matrix S = ((probabilities.array() + epsilon) / norm);
  Matrix L = S.array().log();

  // KL^J(a,b) = 1/2 [ r_a + r_b - <s_a, l_b> - <s_b, l_a> ] with
  // r_x = <s_x, l_x>; one GEMM covers every pair.
  Matrix A = S * L.transpose();
  Vector r = A.diagonal();

  Matrix D(n, n);
  for (int i = 0; i < n; ++i) {
    D(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (r(i) + r(j) - A(i, j) - A(j, i));
      v = std::max(v, 0.0);
      D(i, j) = v;
      D(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(D));
}

} // namespace coembed
