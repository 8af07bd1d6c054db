#pragma once

// Truncated multi-mode Fock space.
//
// Every state and operator lives on the box {0..cutoff}^num_modes. Basis
// vectors are ordered lexicographically by occupation numbers with mode 1
// varying slowest, so |m_1,...,m_N> has flat index
//     sum_i m_i * (cutoff+1)^(N-i).
// Modes are numbered from 1, matching the a_1 ... a_N labels of the physics.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace squeezekit {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, std::ptrdiff_t>;

/// Tolerance behind FockState::is_normalized().
inline constexpr double kNormTolerance = 1e-12;
/// Tolerance used when an operation requires a normalized input.
inline constexpr double kNormalizedInputTolerance = 1e-10;

/// Index arithmetic for the lexicographic occupation basis.
class FockBasis {
 public:
  FockBasis(int num_modes, int cutoff);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return dim_; }
  /// Stride of `mode` (1-based) in the flat index.
  std::size_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode - 1)]; }

  std::size_t index(std::span<const int> occupations) const;
  std::vector<int> occupations(std::size_t index) const;
  /// Occupation of one mode for a flat index, without materializing the rest.
  int occupation(std::size_t index, int mode) const;

 private:
  int num_modes_;
  int cutoff_;
  std::size_t dim_;
  std::vector<std::size_t> strides_;
};

/// Number of basis states, (cutoff+1)^num_modes, with overflow checking.
std::size_t fock_dimension(int num_modes, int cutoff);

/// Pure state as a dense amplitude tensor.
class FockState {
 public:
  FockState(int num_modes, int cutoff, std::vector<Complex> amplitudes);
  FockState(int num_modes, int cutoff, const DenseVector& amplitudes);

  static FockState basis_state(int cutoff, std::span<const int> occupations);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return amplitudes_.size(); }
  FockBasis basis() const { return {num_modes_, cutoff_}; }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::span<const int> occupations) const;
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }
  Eigen::Map<const DenseVector> vector() const {
    return {amplitudes_.data(), static_cast<Eigen::Index>(amplitudes_.size())};
  }

  double norm() const;
  bool is_normalized() const;
  /// Copy scaled to unit norm. Throws DomainError for the zero vector.
  FockState normalized() const;

  /// Norm-squared lost to truncation before a constructor renormalized the
  /// state (1 - ||truncated||^2 relative to the infinite expansion). Zero for
  /// states that were never truncated.
  double truncation_deficit() const { return truncation_deficit_; }
  FockState with_truncation_deficit(double deficit) const;

 private:
  int num_modes_;
  int cutoff_;
  std::vector<Complex> amplitudes_;
  double truncation_deficit_ = 0.0;
};

/// Linear map from the cutoff-`domain_cutoff` space to the
/// cutoff-`codomain_cutoff` space over the same number of modes.
class FockOperator {
 public:
  FockOperator(int num_modes, int domain_cutoff, int codomain_cutoff, SparseMatrix matrix);

  int num_modes() const { return num_modes_; }
  int domain_cutoff() const { return domain_cutoff_; }
  int codomain_cutoff() const { return codomain_cutoff_; }
  bool is_square() const { return domain_cutoff_ == codomain_cutoff_; }
  const SparseMatrix& matrix() const { return matrix_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }

  FockOperator adjoint() const;
  /// Max-norm of U^dagger U - I. Only meaningful for square operators.
  double unitarity_residual() const;
  /// Max-norm of X + X^dagger. Only meaningful for square operators.
  double anti_hermiticity_residual() const;

  static FockOperator from_dense(int num_modes, int cutoff, const DenseMatrix& dense);
  static FockOperator identity(int num_modes, int cutoff);
  static FockOperator zero(int num_modes, int domain_cutoff, int codomain_cutoff);

 private:
  int num_modes_;
  int domain_cutoff_;
  int codomain_cutoff_;
  SparseMatrix matrix_;
};

/// Composition lhs * rhs; the codomain of rhs must be the domain of lhs.
FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs);
FockOperator operator+(const FockOperator& lhs, const FockOperator& rhs);
FockOperator operator-(const FockOperator& lhs, const FockOperator& rhs);
FockOperator operator*(Complex scale, const FockOperator& op);

FockState apply(const FockOperator& op, const FockState& state);

enum class LadderKind { Lower, Raise };

/// Ladder operator on `mode`.
///
/// Lower maps cutoff K to cutoff K (the |0> column is zero, nothing is lost).
/// Raise maps cutoff K to cutoff K+1 so that a^dagger|K> = sqrt(K+1)|K+1> is
/// kept; all other modes are embedded unchanged into the larger box.
FockOperator ladder(int num_modes, int cutoff, int mode, LadderKind kind);

/// Ladder operator truncated to the square cutoff-K space. For Raise the
/// a^dagger|K> column is dropped, so [a, a^dagger] = 1 fails on the top level.
/// Used where a square matrix is required (generators, similarity transforms).
FockOperator square_ladder(int num_modes, int cutoff, int mode, LadderKind kind);

/// Zero-padding inclusion of the cutoff-`from` space into the cutoff-`to` space.
FockOperator embedding(int num_modes, int from_cutoff, int to_cutoff);
FockState embed(const FockState& state, int cutoff);

FockState new_vacuum(int num_modes, int cutoff);

/// <lhs|rhs>, conjugate-linear in lhs.
Complex inner(const FockState& lhs, const FockState& rhs);

/// |<lhs|rhs>|^2 for normalized states.
double fidelity(const FockState& lhs, const FockState& rhs);

/// <psi| a_mode^dagger a_mode |psi> for a normalized state.
double mean_occupation(const FockState& state, int mode);

/// State on the modes of `lhs` followed by the modes of `rhs`. Both factors
/// must share the cutoff.
FockState tensor_product(const FockState& lhs, const FockState& rhs);

class DensityMatrix {
 public:
  DensityMatrix(int num_modes, int cutoff, DenseMatrix matrix);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  const DenseMatrix& matrix() const { return matrix_; }
  double hermiticity_residual() const;
  Complex trace() const { return matrix_.trace(); }

 private:
  int num_modes_;
  int cutoff_;
  DenseMatrix matrix_;
};

/// Partial trace over every mode not listed in `keep_modes` (1-based). The
/// kept modes appear in ascending order in the result's basis.
DensityMatrix reduced_density(const FockState& state, std::span<const int> keep_modes);

/// -sum lambda ln lambda over eigenvalues above 1e-14.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace squeezekit
