#include "squeezekit/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "squeezekit/errors.hpp"

namespace squeezekit {

namespace {

void require_positive(int value, const char* what) {
  if (value < 1) {
    throw InvalidArgument(std::string(what) + " must be >= 1, got " + std::to_string(value));
  }
}

void require_mode(int num_modes, int mode) {
  if (mode < 1 || mode > num_modes) {
    throw InvalidArgument("mode index " + std::to_string(mode) + " outside [1, " +
                          std::to_string(num_modes) + "]");
  }
}

void require_same_shape(const FockState& lhs, const FockState& rhs) {
  if (lhs.num_modes() != rhs.num_modes() || lhs.cutoff() != rhs.cutoff()) {
    throw InvalidArgument("state shape mismatch: (" + std::to_string(lhs.num_modes()) + " modes, cutoff " +
                          std::to_string(lhs.cutoff()) + ") vs (" + std::to_string(rhs.num_modes()) +
                          " modes, cutoff " + std::to_string(rhs.cutoff()) + ")");
  }
}

void require_normalized(const FockState& state, const char* what) {
  if (std::abs(state.norm() - 1.0) > kNormalizedInputTolerance) {
    throw InvalidArgument(std::string(what) + " requires a normalized state (norm = " +
                          std::to_string(state.norm()) + ")");
  }
}

using Triplet = Eigen::Triplet<Complex, std::ptrdiff_t>;

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& triplets) {
  SparseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

// Ladder action on one mode, mapping the cutoff-`from` box into the
// cutoff-`to` box. Levels that would leave the target box are dropped.
FockOperator ladder_between(int num_modes, int from, int to, int mode, LadderKind kind) {
  require_positive(num_modes, "num_modes");
  require_positive(from, "cutoff");
  require_mode(num_modes, mode);
  const FockBasis in(num_modes, from);
  const FockBasis out(num_modes, to);
  std::vector<Triplet> triplets;
  triplets.reserve(in.dim());
  std::vector<int> occ(static_cast<std::size_t>(num_modes), 0);
  for (std::size_t col = 0; col < in.dim(); ++col) {
    occ = in.occupations(col);
    int& m = occ[static_cast<std::size_t>(mode - 1)];
    double amp = 0.0;
    if (kind == LadderKind::Lower) {
      if (m == 0) continue;
      amp = std::sqrt(static_cast<double>(m));
      m -= 1;
    } else {
      if (m + 1 > to) continue;
      amp = std::sqrt(static_cast<double>(m + 1));
      m += 1;
    }
    if (std::any_of(occ.begin(), occ.end(), [to](int o) { return o > to; })) continue;
    triplets.emplace_back(static_cast<std::ptrdiff_t>(out.index(occ)), static_cast<std::ptrdiff_t>(col), amp);
  }
  return {num_modes, from, to, from_triplets(out.dim(), in.dim(), triplets)};
}

}  // namespace

std::size_t fock_dimension(int num_modes, int cutoff) {
  require_positive(num_modes, "num_modes");
  require_positive(cutoff, "cutoff");
  std::size_t dim = 1;
  const auto per_mode = static_cast<std::size_t>(cutoff) + 1;
  for (int i = 0; i < num_modes; ++i) {
    if (dim > std::numeric_limits<std::size_t>::max() / per_mode / 64) {
      throw BudgetExceeded("Fock space dimension overflows for " + std::to_string(num_modes) +
                           " modes at cutoff " + std::to_string(cutoff));
    }
    dim *= per_mode;
  }
  return dim;
}

FockBasis::FockBasis(int num_modes, int cutoff)
    : num_modes_(num_modes), cutoff_(cutoff), dim_(fock_dimension(num_modes, cutoff)) {
  strides_.assign(static_cast<std::size_t>(num_modes), 1);
  for (int i = num_modes - 2; i >= 0; --i) {
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i) + 1] * (static_cast<std::size_t>(cutoff) + 1);
  }
}

std::size_t FockBasis::index(std::span<const int> occupations) const {
  if (occupations.size() != static_cast<std::size_t>(num_modes_)) {
    throw InvalidArgument("expected " + std::to_string(num_modes_) + " occupation numbers, got " +
                          std::to_string(occupations.size()));
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    const int m = occupations[i];
    if (m < 0 || m > cutoff_) {
      throw InvalidArgument("occupation " + std::to_string(m) + " outside [0, " + std::to_string(cutoff_) + "]");
    }
    idx += static_cast<std::size_t>(m) * strides_[i];
  }
  return idx;
}

std::vector<int> FockBasis::occupations(std::size_t index) const {
  std::vector<int> occ(static_cast<std::size_t>(num_modes_));
  for (std::size_t i = 0; i < occ.size(); ++i) {
    occ[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return occ;
}

int FockBasis::occupation(std::size_t index, int mode) const {
  const auto i = static_cast<std::size_t>(mode - 1);
  return static_cast<int>((index / strides_[i]) % (static_cast<std::size_t>(cutoff_) + 1));
}

// ---------------------------------------------------------------- FockState

FockState::FockState(int num_modes, int cutoff, std::vector<Complex> amplitudes)
    : num_modes_(num_modes), cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
  const std::size_t dim = fock_dimension(num_modes, cutoff);
  if (amplitudes_.size() != dim) {
    throw InvalidArgument("amplitude tensor has " + std::to_string(amplitudes_.size()) + " entries, expected " +
                          std::to_string(dim));
  }
}

FockState::FockState(int num_modes, int cutoff, const DenseVector& amplitudes)
    : FockState(num_modes, cutoff, std::vector<Complex>(amplitudes.data(), amplitudes.data() + amplitudes.size())) {}

FockState FockState::basis_state(int cutoff, std::span<const int> occupations) {
  const int num_modes = static_cast<int>(occupations.size());
  const FockBasis basis(num_modes, cutoff);
  std::vector<Complex> amps(basis.dim(), Complex{0.0, 0.0});
  amps[basis.index(occupations)] = 1.0;
  return {num_modes, cutoff, std::move(amps)};
}

Complex FockState::amplitude(std::span<const int> occupations) const {
  return amplitudes_[basis().index(occupations)];
}

double FockState::norm() const { return vector().norm(); }

bool FockState::is_normalized() const { return std::abs(norm() - 1.0) <= kNormTolerance; }

FockState FockState::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize the zero vector");
  std::vector<Complex> amps(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), amps.begin(), [n](Complex c) { return c / n; });
  FockState out(num_modes_, cutoff_, std::move(amps));
  out.truncation_deficit_ = truncation_deficit_;
  return out;
}

FockState FockState::with_truncation_deficit(double deficit) const {
  FockState out = *this;
  out.truncation_deficit_ = deficit;
  return out;
}

// ------------------------------------------------------------- FockOperator

FockOperator::FockOperator(int num_modes, int domain_cutoff, int codomain_cutoff, SparseMatrix matrix)
    : num_modes_(num_modes), domain_cutoff_(domain_cutoff), codomain_cutoff_(codomain_cutoff),
      matrix_(std::move(matrix)) {
  const auto rows = fock_dimension(num_modes, codomain_cutoff);
  const auto cols = fock_dimension(num_modes, domain_cutoff);
  if (static_cast<std::size_t>(matrix_.rows()) != rows || static_cast<std::size_t>(matrix_.cols()) != cols) {
    throw InvalidArgument("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
  matrix_.makeCompressed();
}

FockOperator FockOperator::adjoint() const {
  return {num_modes_, codomain_cutoff_, domain_cutoff_, SparseMatrix(matrix_.adjoint())};
}

double FockOperator::unitarity_residual() const {
  const DenseMatrix u = dense();
  const DenseMatrix gram = u.adjoint() * u;
  return (gram - DenseMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double FockOperator::anti_hermiticity_residual() const {
  const SparseMatrix sum = matrix_ + SparseMatrix(matrix_.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < sum.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(sum, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

FockOperator FockOperator::from_dense(int num_modes, int cutoff, const DenseMatrix& dense) {
  return {num_modes, cutoff, cutoff, dense.sparseView(0.0, 0.0)};
}

FockOperator FockOperator::identity(int num_modes, int cutoff) {
  const auto dim = static_cast<Eigen::Index>(fock_dimension(num_modes, cutoff));
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return {num_modes, cutoff, cutoff, std::move(m)};
}

FockOperator FockOperator::zero(int num_modes, int domain_cutoff, int codomain_cutoff) {
  return {num_modes, domain_cutoff, codomain_cutoff,
          SparseMatrix(static_cast<Eigen::Index>(fock_dimension(num_modes, codomain_cutoff)),
                       static_cast<Eigen::Index>(fock_dimension(num_modes, domain_cutoff)))};
}

FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs) {
  if (lhs.num_modes() != rhs.num_modes() || lhs.domain_cutoff() != rhs.codomain_cutoff()) {
    throw InvalidArgument("operator composition: codomain cutoff " + std::to_string(rhs.codomain_cutoff()) +
                          " does not match domain cutoff " + std::to_string(lhs.domain_cutoff()));
  }
  return {lhs.num_modes(), rhs.domain_cutoff(), lhs.codomain_cutoff(), SparseMatrix(lhs.matrix() * rhs.matrix())};
}

namespace {
void require_same_operator_shape(const FockOperator& lhs, const FockOperator& rhs) {
  if (lhs.num_modes() != rhs.num_modes() || lhs.domain_cutoff() != rhs.domain_cutoff() ||
      lhs.codomain_cutoff() != rhs.codomain_cutoff()) {
    throw InvalidArgument("operator shape mismatch in sum");
  }
}
}  // namespace

FockOperator operator+(const FockOperator& lhs, const FockOperator& rhs) {
  require_same_operator_shape(lhs, rhs);
  return {lhs.num_modes(), lhs.domain_cutoff(), lhs.codomain_cutoff(), SparseMatrix(lhs.matrix() + rhs.matrix())};
}

FockOperator operator-(const FockOperator& lhs, const FockOperator& rhs) {
  require_same_operator_shape(lhs, rhs);
  return {lhs.num_modes(), lhs.domain_cutoff(), lhs.codomain_cutoff(), SparseMatrix(lhs.matrix() - rhs.matrix())};
}

FockOperator operator*(Complex scale, const FockOperator& op) {
  return {op.num_modes(), op.domain_cutoff(), op.codomain_cutoff(), SparseMatrix(scale * op.matrix())};
}

FockState apply(const FockOperator& op, const FockState& state) {
  if (op.num_modes() != state.num_modes() || op.domain_cutoff() != state.cutoff()) {
    throw InvalidArgument("operator domain (cutoff " + std::to_string(op.domain_cutoff()) +
                          ") does not match state (cutoff " + std::to_string(state.cutoff()) + ")");
  }
  const DenseVector out = op.matrix() * state.vector();
  return {op.num_modes(), op.codomain_cutoff(), out};
}

FockOperator ladder(int num_modes, int cutoff, int mode, LadderKind kind) {
  const int to = kind == LadderKind::Raise ? cutoff + 1 : cutoff;
  return ladder_between(num_modes, cutoff, to, mode, kind);
}

FockOperator square_ladder(int num_modes, int cutoff, int mode, LadderKind kind) {
  return ladder_between(num_modes, cutoff, cutoff, mode, kind);
}

FockOperator embedding(int num_modes, int from_cutoff, int to_cutoff) {
  if (to_cutoff < from_cutoff) {
    throw InvalidArgument("embedding target cutoff " + std::to_string(to_cutoff) + " below source cutoff " +
                          std::to_string(from_cutoff));
  }
  const FockBasis in(num_modes, from_cutoff);
  const FockBasis out(num_modes, to_cutoff);
  std::vector<Triplet> triplets;
  triplets.reserve(in.dim());
  for (std::size_t col = 0; col < in.dim(); ++col) {
    triplets.emplace_back(static_cast<std::ptrdiff_t>(out.index(in.occupations(col))),
                          static_cast<std::ptrdiff_t>(col), 1.0);
  }
  return {num_modes, from_cutoff, to_cutoff, from_triplets(out.dim(), in.dim(), triplets)};
}

FockState embed(const FockState& state, int cutoff) {
  return apply(embedding(state.num_modes(), state.cutoff(), cutoff), state)
      .with_truncation_deficit(state.truncation_deficit());
}

FockState new_vacuum(int num_modes, int cutoff) {
  const std::vector<int> zeros(static_cast<std::size_t>(std::max(num_modes, 0)), 0);
  require_positive(num_modes, "num_modes");
  require_positive(cutoff, "cutoff");
  return FockState::basis_state(cutoff, zeros);
}

Complex inner(const FockState& lhs, const FockState& rhs) {
  require_same_shape(lhs, rhs);
  return lhs.vector().dot(rhs.vector());  // Eigen's dot conjugates the left operand
}

double fidelity(const FockState& lhs, const FockState& rhs) {
  require_same_shape(lhs, rhs);
  require_normalized(lhs, "fidelity");
  require_normalized(rhs, "fidelity");
  return std::min(1.0, std::norm(inner(lhs, rhs)));
}

double mean_occupation(const FockState& state, int mode) {
  require_mode(state.num_modes(), mode);
  require_normalized(state, "mean_occupation");
  const FockBasis basis = state.basis();
  double total = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    total += basis.occupation(i, mode) * std::norm(state[i]);
  }
  return total;
}

FockState tensor_product(const FockState& lhs, const FockState& rhs) {
  if (lhs.cutoff() != rhs.cutoff()) {
    throw InvalidArgument("tensor_product requires equal cutoffs");
  }
  std::vector<Complex> amps(lhs.dim() * rhs.dim());
  for (std::size_t i = 0; i < lhs.dim(); ++i) {
    for (std::size_t j = 0; j < rhs.dim(); ++j) amps[i * rhs.dim() + j] = lhs[i] * rhs[j];
  }
  return {lhs.num_modes() + rhs.num_modes(), lhs.cutoff(), std::move(amps)};
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(int num_modes, int cutoff, DenseMatrix matrix)
    : num_modes_(num_modes), cutoff_(cutoff), matrix_(std::move(matrix)) {
  const auto dim = static_cast<Eigen::Index>(fock_dimension(num_modes, cutoff));
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw InvalidArgument("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
}

double DensityMatrix::hermiticity_residual() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix reduced_density(const FockState& state, std::span<const int> keep_modes) {
  const int n = state.num_modes();
  const std::set<int> keep(keep_modes.begin(), keep_modes.end());
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw InvalidArgument("keep_modes must be a nonempty proper subset of the " + std::to_string(n) + " modes");
  }
  if (keep.size() != keep_modes.size()) throw InvalidArgument("keep_modes contains duplicates");
  for (int m : keep) require_mode(n, m);
  require_normalized(state, "reduced_density");

  const int kept = static_cast<int>(keep.size());
  const FockBasis full = state.basis();
  const FockBasis kept_basis(kept, state.cutoff());
  const FockBasis rest_basis(n - kept, state.cutoff());

  DenseMatrix psi = DenseMatrix::Zero(static_cast<Eigen::Index>(kept_basis.dim()),
                                      static_cast<Eigen::Index>(rest_basis.dim()));
  std::vector<int> kept_occ(static_cast<std::size_t>(kept));
  std::vector<int> rest_occ(static_cast<std::size_t>(n - kept));
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (state[i] == Complex{}) continue;
    const auto occ = full.occupations(i);
    std::size_t ki = 0;
    std::size_t ri = 0;
    for (int mode = 1; mode <= n; ++mode) {
      const int m = occ[static_cast<std::size_t>(mode - 1)];
      if (keep.contains(mode)) {
        kept_occ[ki++] = m;
      } else {
        rest_occ[ri++] = m;
      }
    }
    psi(static_cast<Eigen::Index>(kept_basis.index(kept_occ)), static_cast<Eigen::Index>(rest_basis.index(rest_occ))) =
        state[i];
  }
  DenseMatrix rho = psi * psi.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {kept, state.cutoff(), std::move(rho)};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  if (rho.hermiticity_residual() > 1e-10) {
    throw InvalidArgument("density matrix is not Hermitian (residual " + std::to_string(rho.hermiticity_residual()) +
                          ")");
  }
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda > 1e-14) entropy -= lambda * std::log(lambda);
  }
  return std::max(entropy, 0.0);
}

}  // namespace squeezekit
