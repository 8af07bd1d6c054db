#pragma once

// Cyclic annihilation conditions (a_i - alpha_i a_{i+1}^dagger)|psi> = 0,
// i = 1..N with a_{N+1} = a_1, and the numerical machinery that decides
// whether a joint normalizable solution exists.
//
// Each condition is assembled as a rectangular map from the cutoff-K box into
// the cutoff-(K+1) box, so ||C psi|| is the exact residual of the untruncated
// conditions for every psi supported in the box. Square truncation would drop
// the a^dagger|K> terms and manufacture spurious near-solutions at the
// boundary.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "squeezekit/fock.hpp"

namespace squeezekit {

/// 2 GiB; every allocation-heavy step checks its estimate against this.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

class ConstraintSystem {
 public:
  ConstraintSystem(std::vector<Complex> alphas, int cutoff);

  int num_modes() const { return static_cast<int>(alphas_.size()); }
  const std::vector<Complex>& alphas() const { return alphas_; }
  int cutoff() const { return cutoff_; }
  ConstraintSystem at_cutoff(int cutoff) const { return {alphas_, cutoff}; }
  double max_alpha_modulus() const;
  /// (prod_i |alpha_i|)^(1/N); zero if any alpha is zero.
  double geometric_mean_alpha_modulus() const;
  bool all_alphas_zero() const;

 private:
  std::vector<Complex> alphas_;
  int cutoff_;
};

/// Stacked constraint matrix: rows are (constraint i, cutoff-(K+1) basis
/// state), columns are cutoff-K basis states.
struct ConstraintMatrix {
  int num_modes = 1;
  int cutoff = 1;
  SparseMatrix matrix;
};

/// Bytes needed to hold the sparse stacked matrix for `system`.
std::size_t constraint_matrix_bytes(const ConstraintSystem& system);

/// Throws BudgetExceeded when constraint_matrix_bytes exceeds `memory_budget`.
ConstraintMatrix build_constraint_matrix(const ConstraintSystem& system,
                                         std::size_t memory_budget = kDefaultMemoryBudget);

/// ||(a_i - alpha_i a_{i+1}^dagger) psi|| for each i, with the raising term
/// kept in the cutoff-(K+1) box.
std::vector<double> constraint_residuals(const ConstraintSystem& system, const FockState& state);

/// ||(a_lower - alpha a_raise^dagger) psi|| for one pair of modes.
double pair_condition_residual(const FockState& state, int lower_mode, int raise_mode, Complex alpha);

/// Residual that an exact solution truncated at the cutoff may leave in the
/// stacked conditions, ||C psi_K||:
///   N = 1:  |alpha|^(K'/2+1) sqrt(K'+2) with K' the largest even number <= K,
///   N >= 2: sqrt(N) g^(K+1) sqrt(K+2), g the geometric mean of |alpha_i|.
/// Going once around the cycle multiplies a solution's amplitudes by
/// prod_i alpha_i, so g is the per-quantum decay rate any solution would
/// have. For N = 2 with equal couplings it is |alpha|.
double truncation_tail_bound(const ConstraintSystem& system);

struct KernelOptions {
  /// Singular values <= relative_tolerance * sigma_max count as zero ...
  double relative_tolerance = 1e-8;
  /// ... as do those <= absolute_floor.
  double absolute_floor = 0.0;
  /// Number of smallest singular values kept in the report.
  std::size_t retain = 6;
  std::size_t memory_budget = kDefaultMemoryBudget;
  /// Blocks with more columns than this go through the Gram matrix and Lanczos.
  std::size_t dense_column_limit = 1200;
};

struct KernelReport {
  int cutoff = 0;
  /// The `retain` smallest singular values, descending.
  std::vector<double> singular_values;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  std::size_t kernel_dim = 0;
  /// Orthonormal kernel basis, each vector with its largest leading amplitude
  /// made real and positive.
  std::vector<FockState> kernel_basis;
  /// Effective relative tolerance: threshold / sigma_max.
  double tolerance = 0.0;
  /// Absolute singular-value threshold actually applied.
  double threshold = 0.0;
  /// Number of independent coordinate blocks the matrix split into.
  std::size_t num_blocks = 0;
  /// "dense-svd", "gram-lanczos" or "mixed".
  std::string method;
};

/// SVD-based nullspace of a stacked constraint matrix.
///
/// The matrix is first split into the connected components of its row/column
/// incidence graph; the conditions conserve total-number parity (and, for even
/// N, the alternating charge m_1 - m_2 + m_3 - ...), so the split is large.
/// Blocks up to `dense_column_limit` columns get a dense SVD; larger blocks use
/// Lanczos on the sparse Gram matrix B^dagger B, whose eigenvalues are the
/// squared singular values. The Gram route loses accuracy for singular values
/// below ~1e-7 * sigma_max. Throws NumericalError if Lanczos fails to converge.
KernelReport kernel_analysis(const ConstraintMatrix& matrix, const KernelOptions& options = {});

/// build_constraint_matrix + kernel_analysis with the absolute floor raised
/// to truncation_tail_bound(system) so truncated exact solutions are counted.
KernelReport analyze_system(const ConstraintSystem& system, KernelOptions options = {});

/// analyze_system at each cutoff (ascending, at least three). Cutoffs run in
/// parallel, capped by SQUEEZEKIT_THREADS.
std::vector<KernelReport> cutoff_scan(const ConstraintSystem& system, std::span<const int> cutoffs,
                                      const KernelOptions& options = {});

enum class VerdictKind { UniqueSqueezedState, VacuumOnly, NoSolution, Inconclusive };

std::string to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::vector<int> cutoffs;
  std::vector<double> sigma_min;
  std::vector<std::size_t> kernel_dims;
  /// Least-squares slope of ln sigma_min against cutoff.
  double log_slope = 0.0;
  /// |sigma_last - sigma_prev| / sigma_prev over the last two cutoffs.
  double plateau_change = 0.0;
  std::string reason;
};

/// Slope below which sigma_min counts as geometrically decaying.
inline constexpr double kDecaySlope = -0.05;
/// Relative change below which sigma_min counts as converged to a plateau.
inline constexpr double kPlateauChange = 0.10;

/// UniqueSqueezedState: slope < kDecaySlope and kernel_dim 1 at the last cutoff.
/// NoSolution: kernel_dim 0 throughout, slope >= kDecaySlope, plateau change
/// below kPlateauChange. VacuumOnly: all alphas zero and the last kernel is
/// exactly the vacuum. Anything else is Inconclusive.
Verdict classify(std::span<const KernelReport> scan, const ConstraintSystem& system);

struct AnsatzResidual {
  std::vector<double> per_constraint;
  double max = 0.0;
};

/// Conditions evaluated on sum_k C_k |k,k,...,k>.
AnsatzResidual diagonal_ansatz_residual(std::span<const Complex> alphas, std::span<const Complex> coeffs,
                                        int cutoff);

struct PairwiseChainReport {
  int cutoff = 0;
  /// For pair (2j-1, 2j): residuals of (a_{2j-1} - alpha a_{2j}^dagger) and
  /// (a_{2j} - alpha a_{2j-1}^dagger), in pair order.
  std::vector<double> pair_residuals;
  /// Residual of every cyclic condition i = 1..N on the same product state.
  std::vector<double> cyclic_residuals;
  double max_pair_residual = 0.0;
  /// Per-condition truncation tail for one two-mode pair.
  double pair_tail_bound = 0.0;
  /// Largest cyclic residual, i.e. how badly the global conditions fail.
  double max_cyclic_residual = 0.0;
};

/// Product of two-mode squeezed vacua on modes (1,2), (3,4), ..., the pair
/// (2j-1, 2j) using alpha_{2j-1}. N must be even.
PairwiseChainReport pairwise_chain_check(std::span<const Complex> alphas, int cutoff);

}  // namespace squeezekit
