#include "coembed/svd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace coembed {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void apply_sign_convention(Matrix& U, Matrix& V) {
  for (int c = 0; c < U.cols(); ++c) {
    int idx = 0;
    U.col(c).cwiseAbs().maxCoeff(&idx);
    if (U(idx, c) < 0.0) {
      U.col(c) = -U.col(c);
      V.col(c) = -V.col(c);
    }
  }
}

bool valid_spectrum(const Vector& s) {
  for (int i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s(i)) || s(i) < 0.0) return false;
    if (i > 0 && s(i) > s(i - 1) + 1e-12 * std::max(1.0, s(0))) return false;
  }
  return true;
}

TruncatedSvd randomized_svd(const Matrix& A, int rank, std::uint64_t seed) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int l = std::min(rank + 8, std::min(m, n));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix omega(n, l);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < l; ++j) omega(i, j) = gauss(rng);

  auto orth = [](const Matrix& X) {
    Eigen::HouseholderQR<Matrix> qr(X);
    return Matrix(qr.householderQ() * Matrix::Identity(X.rows(), X.cols()));
  };

  Matrix Q = orth(A * omega);
  for (int it = 0; it < 4; ++it) {
    Q = orth(A.transpose() * Q);
    Q = orth(A * Q);
  }

  Matrix B = Q.transpose() * A; // l x n
  Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.U = (Q * svd.matrixU()).leftCols(rank);
  out.S = svd.singularValues().head(rank);
  out.V = svd.matrixV().leftCols(rank);
  return out;
}

} // namespace

TruncatedSvd truncated_svd(const Matrix& A, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > std::min(A.rows(), A.cols()))
    throw std::invalid_argument("invalid SVD rank");

  if (std::min(A.rows(), A.cols()) <= 500) {
    Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
      throw NumericalError("dense SVD failed to converge");
    TruncatedSvd out;
    out.U = svd.matrixU().leftCols(rank);
    out.S = svd.singularValues().head(rank);
    out.V = svd.matrixV().leftCols(rank);
    apply_sign_convention(out.U, out.V);
    return out;
  }

  const int max_restarts = 3;
  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    TruncatedSvd out = randomized_svd(A, rank, mix_seed(seed, attempt));
    if (valid_spectrum(out.S) && out.U.allFinite() && out.V.allFinite()) {
      apply_sign_convention(out.U, out.V);
      return out;
    }
  }
  throw NumericalError("randomized SVD failed after restarts");
}

} // namespace coembed
