#include "coembed/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace coembed {

namespace {

void validate_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
  if (!m.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

} // namespace

DistanceMatrix::DistanceMatrix(Matrix values) : values_(std::move(values)) {
  validate_square(values_, "DistanceMatrix");
  const double scale = std::max(1.0, values_.cwiseAbs().maxCoeff());
  if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("DistanceMatrix: not symmetric");
  if (values_.diagonal().cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("DistanceMatrix: nonzero diagonal");
  if (values_.minCoeff() < 0.0)
    throw std::invalid_argument("DistanceMatrix: negative entry");
}

AffinityMatrix::AffinityMatrix(Matrix values) : values_(std::move(values)) {
  validate_square(values_, "AffinityMatrix");
  if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("AffinityMatrix: not symmetric");
  if (values_.minCoeff() < 0.0)
    throw std::invalid_argument("AffinityMatrix: negative entry");
  if (values_.diagonal().cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("AffinityMatrix: nonzero diagonal");
  if (std::abs(values_.sum() - 1.0) > 1e-6)
    throw std::invalid_argument("AffinityMatrix: does not sum to 1");
}

AffinityResult conditional_affinities(const DistanceMatrix& D, double perplexity) {
  const int n = D.size();
  if (n < 2) throw std::invalid_argument("need at least 2 items");
  if (!(perplexity > 0.0) || perplexity >= n)
    throw std::invalid_argument("perplexity must be in (0, n)");

  const Matrix S = D.values().array().square(); // Gaussian acts on squared distances
  Matrix P_cond = Matrix::Zero(n, n);
  std::vector<int> fallback;

  const int max_steps = 200;
  const double tol = 1e-5;

  std::vector<double> s(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    double s_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s[m++] = S(i, j);
      s_min = std::min(s_min, S(i, j));
    }

    // Row entropy (nats) and conditional probabilities for a given precision.
    auto row_at = [&](double beta, double* probs) {
      double z = 0.0, moment = 0.0;
      for (int j = 0; j < m; ++j) {
        double w = std::exp(-beta * (s[j] - s_min));
        probs[j] = w;
        z += w;
        moment += w * (s[j] - s_min);
      }
      for (int j = 0; j < m; ++j) probs[j] /= z;
      return std::log(z) + beta * moment / z;
    };

    std::vector<double> probs(static_cast<std::size_t>(m));
    double beta = 1.0, lo = 0.0, hi = std::numeric_limits<double>::infinity();
    bool ok = false;
    for (int step = 0; step < max_steps; ++step) {
      double h = row_at(beta, probs.data());
      double diff = std::exp(h) - perplexity;
      if (std::abs(diff) <= tol) {
        ok = true;
        break;
      }
      if (diff > 0.0) { // perplexity too high -> sharpen
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (lo + hi);
      } else {
        hi = beta;
        beta = lo > 0.0 ? 0.5 * (lo + hi) : beta * 0.5;
      }
    }
    if (!ok) {
      // degenerate row (e.g. all distances equal): uniform over off-diagonal
      std::fill(probs.begin(), probs.end(), 1.0 / m);
      fallback.push_back(i);
    }
    for (int j = 0, c = 0; j < n; ++j)
      if (j != i) P_cond(i, j) = probs[static_cast<std::size_t>(c++)];
  }

  Matrix P = (P_cond + P_cond.transpose()) / (2.0 * n);
  P.diagonal().setZero();
  return AffinityResult{AffinityMatrix(std::move(P)), std::move(P_cond),
                        std::move(fallback)};
}

namespace {

struct GradientWorkspace {
  Matrix W;     // Student-t weights, diagonal left at 1
  Matrix cross; // Y * Y^T
  Matrix coef;
  Matrix grad;
  Vector sq_norms;
};

// Student-t weight matrix of the embedding; w_ij = 1 / (1 + |y_i - y_j|^2).
void student_weights(const Embedding& Y, GradientWorkspace& ws) {
  const int n = static_cast<int>(Y.rows());
  ws.sq_norms = Y.rowwise().squaredNorm();
  ws.cross.noalias() = Y * Y.transpose();
  ws.W = (ws.sq_norms.replicate(1, n) + ws.sq_norms.transpose().replicate(n, 1) -
          2.0 * ws.cross);
  ws.W = (1.0 + ws.W.array().max(0.0)).inverse();
}

double objective_given_weights(const Matrix& P, double p_log_p,
                               const GradientWorkspace& ws) {
  const int n = static_cast<int>(ws.W.rows());
  const double sum_w = ws.W.sum() - n; // exclude the unit diagonal
  // diagonal terms vanish: P has zero diagonal and log(w_ii) = 0
  const double p_log_w = (P.array() * ws.W.array().log()).sum();
  return p_log_p - p_log_w + std::log(sum_w);
}

double objective_at(const Matrix& P, double p_log_p, const Embedding& Y,
                    GradientWorkspace& ws) {
  student_weights(Y, ws);
  return objective_given_weights(P, p_log_p, ws);
}

} // namespace

TsneResult tsne_embed(const DistanceMatrix& D, const TsneConfig& cfg,
                      const std::optional<Embedding>& init) {
  const int n = D.size();
  if (n < 2) throw std::invalid_argument("need at least 2 items");
  if (cfg.dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (init && (init->rows() != n || init->cols() != cfg.dim))
    throw std::invalid_argument("init shape mismatch");

  AffinityResult aff = conditional_affinities(D, cfg.perplexity);
  const Matrix& P = aff.P.values();
  double p_log_p = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P(i, j) > 0.0) p_log_p += P(i, j) * std::log(P(i, j));

  Embedding Y(n, cfg.dim);
  const bool warm = init.has_value();
  if (warm) {
    Y = *init;
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1e-2);
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < cfg.dim; ++d) Y(i, d) = gauss(rng);
  }
  Y.rowwise() -= Y.colwise().mean();

  const double lr = cfg.learning_rate > 0.0
                        ? cfg.learning_rate
                        : std::max(static_cast<double>(n) / 12.0, 50.0);
  const bool exaggerate = !warm || cfg.exaggerate_warm_start;
  const int ee_end =
      exaggerate ? std::min(cfg.early_exaggeration_iters, cfg.max_iter) : 0;

  Matrix velocity = Matrix::Zero(n, cfg.dim);
  Matrix gains = Matrix::Ones(n, cfg.dim);
  GradientWorkspace ws;
  TsneResult out;
  out.bisection_fallback_rows = std::move(aff.fallback_rows);
  out.objective_trace.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);

  double obj = objective_at(P, p_log_p, Y, ws);
  out.objective_trace.push_back(obj);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const bool exaggerated = iter < ee_end;
    const double alpha = exaggerated ? cfg.early_exaggeration_factor : 1.0;
    const double momentum = iter < cfg.momentum_switch_iter ? cfg.momentum_initial
                                                            : cfg.momentum_final;

    // weights are already valid for the current Y (from the last evaluation)
    const double sum_w = ws.W.sum() - n;
    ws.coef = (alpha * P.array() - ws.W.array() / sum_w) * ws.W.array();
    ws.coef.diagonal().setZero();
    ws.grad.noalias() = -ws.coef * Y;
    ws.grad += ws.coef.rowwise().sum().asDiagonal() * Y;
    ws.grad *= 4.0;
    if (!ws.grad.allFinite())
      throw NumericalError("t-SNE gradient diverged at iteration " +
                           std::to_string(iter));

    gains = ((ws.grad.array() * velocity.array()) < 0.0)
                .select(gains.array() + 0.2, gains.array() * 0.8)
                .max(0.01);

    Matrix step = momentum * velocity - lr * (gains.array() * ws.grad.array()).matrix();

    if (exaggerated) {
      velocity = step;
      Y += step;
      Y.rowwise() -= Y.colwise().mean();
      obj = objective_at(P, p_log_p, Y, ws);
    } else {
      // enforce descent on the plain objective: halve the step while it
      // would increase KL
      Embedding Y_try = Y + step;
      Y_try.rowwise() -= Y_try.colwise().mean();
      double obj_try = objective_at(P, p_log_p, Y_try, ws);
      int halvings = 0;
      while (obj_try > obj && halvings < 12) {
        step *= 0.5;
        Y_try = Y + step;
        Y_try.rowwise() -= Y_try.colwise().mean();
        obj_try = objective_at(P, p_log_p, Y_try, ws);
        ++halvings;
      }
      if (obj_try > obj) {
        // no acceptable step; stay put and kill the momentum
        velocity.setZero();
        student_weights(Y, ws);
      } else {
        velocity = step;
        Y = Y_try;
        obj = obj_try;
      }
    }
    out.objective_trace.push_back(obj);
  }

  Y.rowwise() -= Y.colwise().mean();
  out.Y = std::move(Y);
  return out;
}

double kl_objective(const AffinityMatrix& P, const Embedding& Y) {
  if (P.size() != Y.rows()) throw std::invalid_argument("shape mismatch");
  const Matrix& p = P.values();
  double p_log_p = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0) p_log_p += p(i, j) * std::log(p(i, j));
  GradientWorkspace ws;
  return objective_at(p, p_log_p, Y, ws);
}

StabilityResult neighborhood_stability(const Embedding& Y_prev,
                                       const Embedding& Y_next, int n_neighbors) {
  const int n = static_cast<int>(Y_prev.rows());
  if (Y_next.rows() != n) throw std::invalid_argument("item count mismatch");
  if (n_neighbors < 1 || n_neighbors >= n)
    throw std::invalid_argument("n_neighbors must be in [1, n)");

  auto neighbor_set = [n, n_neighbors](const Embedding& Y, int i) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      dist.emplace_back((Y.row(i) - Y.row(j)).squaredNorm(), j);
    }
    std::partial_sort(dist.begin(), dist.begin() + n_neighbors, dist.end());
    std::vector<int> ids(static_cast<std::size_t>(n_neighbors));
    for (int k = 0; k < n_neighbors; ++k) ids[static_cast<std::size_t>(k)] = dist[static_cast<std::size_t>(k)].second;
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  StabilityResult out;
  out.per_item.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> a = neighbor_set(Y_prev, i);
    std::vector<int> b = neighbor_set(Y_next, i);
    std::vector<int> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(inter));
    const double union_size =
        static_cast<double>(a.size() + b.size() - inter.size());
    out.per_item(i) = static_cast<double>(inter.size()) / union_size;
  }
  out.mean = out.per_item.mean();
  return out;
}

double default_perplexity(int n) {
  if (n < 2) throw std::invalid_argument("need at least 2 items");
  double base = n < 500 ? 15.0 : (n <= 8000 ? 30.0 : 60.0);
  return std::min(base, (n - 1) / 3.0);
}

} // namespace coembed
