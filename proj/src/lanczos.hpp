#pragma once

// Lanczos with full reorthogonalization for the low end of a sparse
// Hermitian positive semidefinite matrix.

#include <cstddef>
#include <vector>

#include "squeezekit/fock.hpp"

namespace squeezekit::detail {

struct LanczosResult {
  /// Ascending Ritz values for the lowest eigenpairs.
  std::vector<double> lowest_values;
  /// Matching orthonormal Ritz vectors, one per column.
  DenseMatrix lowest_vectors;
  /// Largest Ritz value (a lower bound on the spectral radius that converges
  /// quickly from below).
  double largest_value = 0.0;
  std::size_t iterations = 0;
};

/// Lowest `wanted` eigenpairs of `hermitian` restricted to the orthogonal
/// complement of the columns of `deflate` (orthonormal; may have zero
/// columns). Converged when every wanted Ritz residual is below
/// `tolerance` times the largest Ritz value. Throws NumericalError after
/// `max_iterations` steps without convergence.
LanczosResult lanczos_lowest(const SparseMatrix& hermitian, std::size_t wanted, const DenseMatrix& deflate,
                             std::size_t max_iterations, double tolerance);

/// Bytes of Krylov storage lanczos_lowest needs for an n-dimensional problem.
std::size_t lanczos_bytes(std::size_t n, std::size_t max_iterations);

}  // namespace squeezekit::detail
