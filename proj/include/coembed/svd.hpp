#pragma once

#include <cstdint>

#include "coembed/types.hpp"

namespace coembed {

struct TruncatedSvd {
  Matrix U; // m x rank
  Vector S; // non-increasing
  Matrix V; // n x rank
};

/// Rank-`rank` truncated SVD. Small problems use a dense decomposition;
/// larger ones use seeded randomized subspace iteration with a few power
/// steps and bounded restarts. Column signs follow a deterministic
/// convention (the largest-magnitude coordinate of each left vector is
/// positive, the right vector flipped alongside).
/// Throws NumericalError if the decomposition fails after restarts.
TruncatedSvd truncated_svd(const Matrix& A, int rank, std::uint64_t seed = 0);

/// Deterministic derivation of independent sub-seeds from a root seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace coembed
