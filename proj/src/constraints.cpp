#include "squeezekit/constraints.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "lanczos.hpp"
#include "squeezekit/closed_form.hpp"
#include "squeezekit/errors.hpp"

namespace squeezekit {

namespace {

using Triplet = Eigen::Triplet<Complex, std::ptrdiff_t>;

constexpr std::size_t kLanczosMaxIterations = 1000;
constexpr double kLanczosTolerance = 1e-10;

// Image of one basis state under (a_i - alpha a_j^dagger), as at most two
// (row, value) pairs in the cutoff-(K+1) box.
template <typename Emit>
void condition_image(const FockBasis& in, const FockBasis& out, std::size_t col, int lower_mode, int raise_mode,
                     Complex alpha, std::vector<int>& occ, Emit&& emit) {
  occ = in.occupations(col);
  const auto li = static_cast<std::size_t>(lower_mode - 1);
  const auto ri = static_cast<std::size_t>(raise_mode - 1);
  if (occ[li] > 0) {
    const double amp = std::sqrt(static_cast<double>(occ[li]));
    occ[li] -= 1;
    emit(out.index(occ), Complex{amp, 0.0});
    occ[li] += 1;
  }
  if (alpha != Complex{}) {
    const double amp = std::sqrt(static_cast<double>(occ[ri] + 1));
    occ[ri] += 1;
    emit(out.index(occ), -alpha * amp);
    occ[ri] -= 1;
  }
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SQUEEZEKIT_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) threads = static_cast<std::size_t>(parsed);
  }
  return std::max<std::size_t>(1, std::min(threads, jobs));
}

// Union-find over columns joined by shared rows.
struct Blocks {
  std::vector<std::vector<std::ptrdiff_t>> columns;
  std::vector<std::vector<std::ptrdiff_t>> rows;
};

std::ptrdiff_t find_root(std::vector<std::ptrdiff_t>& parent, std::ptrdiff_t x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

Blocks split_blocks(const SparseMatrix& m) {
  const auto cols = static_cast<std::size_t>(m.cols());
  const auto rows = static_cast<std::size_t>(m.rows());
  std::vector<std::ptrdiff_t> parent(cols);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::ptrdiff_t> row_owner(rows, -1);
  for (std::size_t c = 0; c < cols; ++c) {
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(c)); it; ++it) {
      auto& owner = row_owner[static_cast<std::size_t>(it.row())];
      if (owner < 0) {
        owner = static_cast<std::ptrdiff_t>(c);
      } else {
        const auto a = find_root(parent, owner);
        const auto b = find_root(parent, static_cast<std::ptrdiff_t>(c));
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
  }
  std::vector<std::ptrdiff_t> block_of(cols, -1);
  Blocks blocks;
  for (std::size_t c = 0; c < cols; ++c) {
    const auto root = static_cast<std::size_t>(find_root(parent, static_cast<std::ptrdiff_t>(c)));
    if (block_of[root] < 0) {
      block_of[root] = static_cast<std::ptrdiff_t>(blocks.columns.size());
      blocks.columns.emplace_back();
      blocks.rows.emplace_back();
    }
    blocks.columns[static_cast<std::size_t>(block_of[root])].push_back(static_cast<std::ptrdiff_t>(c));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_owner[r] < 0) continue;
    const auto root = static_cast<std::size_t>(find_root(parent, row_owner[r]));
    blocks.rows[static_cast<std::size_t>(block_of[root])].push_back(static_cast<std::ptrdiff_t>(r));
  }
  return blocks;
}

SparseMatrix extract_block(const SparseMatrix& m, const std::vector<std::ptrdiff_t>& rows,
                           const std::vector<std::ptrdiff_t>& cols) {
  std::vector<std::ptrdiff_t> row_pos(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[static_cast<std::size_t>(rows[i])] = static_cast<std::ptrdiff_t>(i);
  std::vector<Triplet> triplets;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (SparseMatrix::InnerIterator it(m, cols[j]); it; ++it) {
      triplets.emplace_back(row_pos[static_cast<std::size_t>(it.row())], static_cast<std::ptrdiff_t>(j), it.value());
    }
  }
  SparseMatrix block(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  block.setFromTriplets(triplets.begin(), triplets.end());
  return block;
}

struct BlockSpectrum {
  std::vector<std::ptrdiff_t> columns;
  bool dense = true;
  // Ascending singular values (all of them for dense blocks, the lowest few
  // for Lanczos blocks) and their right singular vectors, one per column.
  std::vector<double> singular_values;
  DenseMatrix right_vectors;
  double sigma_max = 0.0;
  SparseMatrix gram;
};

BlockSpectrum dense_block(const SparseMatrix& block, std::vector<std::ptrdiff_t> columns) {
  BlockSpectrum out;
  out.columns = std::move(columns);
  const DenseMatrix b(block);
  const Eigen::Index n = b.cols();
  if (b.rows() == 0) {
    out.singular_values.assign(static_cast<std::size_t>(n), 0.0);
    out.right_vectors = DenseMatrix::Identity(n, n);
    return out;
  }
  const unsigned flags = b.rows() >= n ? Eigen::ComputeThinV : Eigen::ComputeFullV;
  Eigen::BDCSVD<DenseMatrix> svd(b, flags);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  const Eigen::VectorXd& s = svd.singularValues();  // descending, length min(rows, cols)
  out.sigma_max = s.size() > 0 ? s(0) : 0.0;
  // Columns of V beyond min(rows, cols) span the structural nullspace.
  for (Eigen::Index i = n - 1; i >= 0; --i) out.singular_values.push_back(i < s.size() ? s(i) : 0.0);
  out.right_vectors = svd.matrixV().leftCols(n).rowwise().reverse();
  return out;
}

void fix_phase(DenseVector& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8 * peak) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------- ConstraintSystem

ConstraintSystem::ConstraintSystem(std::vector<Complex> alphas, int cutoff) : alphas_(std::move(alphas)), cutoff_(cutoff) {
  if (alphas_.empty()) throw InvalidArgument("constraint system needs at least one mode");
  if (cutoff_ < 1) throw InvalidArgument("cutoff must be >= 1");
  for (const Complex& a : alphas_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw DomainError("coupling alphas must be finite");
  }
}

double ConstraintSystem::max_alpha_modulus() const {
  double m = 0.0;
  for (const Complex& a : alphas_) m = std::max(m, std::abs(a));
  return m;
}

double ConstraintSystem::geometric_mean_alpha_modulus() const {
  double log_sum = 0.0;
  for (const Complex& a : alphas_) {
    if (a == Complex{}) return 0.0;
    log_sum += std::log(std::abs(a));
  }
  return std::exp(log_sum / static_cast<double>(alphas_.size()));
}

bool ConstraintSystem::all_alphas_zero() const {
  return std::all_of(alphas_.begin(), alphas_.end(), [](Complex a) { return a == Complex{}; });
}

std::size_t constraint_matrix_bytes(const ConstraintSystem& system) {
  const std::size_t d_in = fock_dimension(system.num_modes(), system.cutoff());
  const std::size_t entries = 2 * static_cast<std::size_t>(system.num_modes()) * d_in;
  // values + inner indices + triplet staging
  return entries * (sizeof(Complex) + sizeof(std::ptrdiff_t)) * 2 + d_in * sizeof(std::ptrdiff_t);
}

ConstraintMatrix build_constraint_matrix(const ConstraintSystem& system, std::size_t memory_budget) {
  const std::size_t bytes = constraint_matrix_bytes(system);
  if (bytes > memory_budget) {
    throw BudgetExceeded("constraint matrix for N=" + std::to_string(system.num_modes()) + ", K=" +
                         std::to_string(system.cutoff()) + " needs ~" + std::to_string(bytes >> 20) +
                         " MiB, budget is " + std::to_string(memory_budget >> 20) + " MiB");
  }
  const int n = system.num_modes();
  const FockBasis in(n, system.cutoff());
  const FockBasis out(n, system.cutoff() + 1);
  std::vector<Triplet> triplets;
  triplets.reserve(2 * static_cast<std::size_t>(n) * in.dim());
  std::vector<int> occ;
  for (std::size_t col = 0; col < in.dim(); ++col) {
    for (int i = 1; i <= n; ++i) {
      const int next = i % n + 1;
      const auto offset = static_cast<std::size_t>(i - 1) * out.dim();
      condition_image(in, out, col, i, next, system.alphas()[static_cast<std::size_t>(i - 1)], occ,
                      [&](std::size_t row, Complex value) {
                        triplets.emplace_back(static_cast<std::ptrdiff_t>(offset + row),
                                              static_cast<std::ptrdiff_t>(col), value);
                      });
    }
  }
  ConstraintMatrix result;
  result.num_modes = n;
  result.cutoff = system.cutoff();
  result.matrix.resize(static_cast<Eigen::Index>(static_cast<std::size_t>(n) * out.dim()),
                       static_cast<Eigen::Index>(in.dim()));
  result.matrix.setFromTriplets(triplets.begin(), triplets.end());
  result.matrix.makeCompressed();
  return result;
}

double pair_condition_residual(const FockState& state, int lower_mode, int raise_mode, Complex alpha) {
  const int n = state.num_modes();
  if (lower_mode < 1 || lower_mode > n || raise_mode < 1 || raise_mode > n) {
    throw InvalidArgument("condition mode outside [1, " + std::to_string(n) + "]");
  }
  const FockBasis in = state.basis();
  const FockBasis out(n, state.cutoff() + 1);
  std::vector<Complex> image(out.dim(), Complex{});
  std::vector<int> occ;
  for (std::size_t col = 0; col < in.dim(); ++col) {
    const Complex c = state[col];
    if (c == Complex{}) continue;
    condition_image(in, out, col, lower_mode, raise_mode, alpha, occ,
                    [&](std::size_t row, Complex value) { image[row] += value * c; });
  }
  double sum = 0.0;
  for (const Complex& z : image) sum += std::norm(z);
  return std::sqrt(sum);
}

std::vector<double> constraint_residuals(const ConstraintSystem& system, const FockState& state) {
  if (state.num_modes() != system.num_modes()) {
    throw InvalidArgument("state has " + std::to_string(state.num_modes()) + " modes, system has " +
                          std::to_string(system.num_modes()));
  }
  const int n = system.num_modes();
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(pair_condition_residual(state, i, i % n + 1, system.alphas()[static_cast<std::size_t>(i - 1)]));
  }
  return out;
}

double truncation_tail_bound(const ConstraintSystem& system) {
  const int k = system.cutoff();
  if (system.num_modes() == 1) {
    const double a = system.max_alpha_modulus();
    const int even = k - k % 2;
    return std::pow(a, even / 2 + 1) * std::sqrt(even + 2.0);
  }
  const double g = system.geometric_mean_alpha_modulus();
  return std::sqrt(static_cast<double>(system.num_modes())) * std::pow(g, k + 1) * std::sqrt(k + 2.0);
}

// ------------------------------------------------------------ kernel_analysis

KernelReport kernel_analysis(const ConstraintMatrix& cm, const KernelOptions& options) {
  const SparseMatrix& m = cm.matrix;
  const std::size_t d_in = fock_dimension(cm.num_modes, cm.cutoff);
  if (static_cast<std::size_t>(m.cols()) != d_in) {
    throw InvalidArgument("constraint matrix has " + std::to_string(m.cols()) + " columns, expected " +
                          std::to_string(d_in));
  }
  const Blocks blocks = split_blocks(m);

  std::vector<BlockSpectrum> spectra;
  spectra.reserve(blocks.columns.size());
  bool any_dense = false;
  bool any_lanczos = false;
  for (std::size_t b = 0; b < blocks.columns.size(); ++b) {
    const auto& cols = blocks.columns[b];
    const auto& rows = blocks.rows[b];
    const SparseMatrix block = extract_block(m, rows, cols);
    if (cols.size() <= options.dense_column_limit) {
      const std::size_t bytes = 3 * std::max<std::size_t>(rows.size(), 1) * cols.size() * sizeof(Complex);
      if (bytes > options.memory_budget) throw BudgetExceeded("dense SVD block exceeds the memory budget");
      spectra.push_back(dense_block(block, cols));
      any_dense = true;
      continue;
    }
    if (detail::lanczos_bytes(cols.size(), kLanczosMaxIterations) > options.memory_budget) {
      throw BudgetExceeded("Lanczos workspace for a " + std::to_string(cols.size()) +
                           "-column block exceeds the memory budget");
    }
    BlockSpectrum part;
    part.columns = cols;
    part.dense = false;
    part.gram = SparseMatrix(block.adjoint() * block);
    const auto result = detail::lanczos_lowest(part.gram, options.retain, DenseMatrix(part.gram.rows(), 0),
                                               kLanczosMaxIterations, kLanczosTolerance);
    for (double lambda : result.lowest_values) part.singular_values.push_back(std::sqrt(std::max(lambda, 0.0)));
    part.right_vectors = result.lowest_vectors;
    part.sigma_max = std::sqrt(std::max(result.largest_value, 0.0));
    spectra.push_back(std::move(part));
    any_lanczos = true;
  }

  KernelReport report;
  report.cutoff = cm.cutoff;
  report.num_blocks = spectra.size();
  report.method = any_dense && any_lanczos ? "mixed" : (any_lanczos ? "gram-lanczos" : "dense-svd");
  for (const auto& s : spectra) report.sigma_max = std::max(report.sigma_max, s.sigma_max);
  report.threshold = std::max(options.relative_tolerance * report.sigma_max, options.absolute_floor);
  report.tolerance = report.sigma_max > 0.0 ? report.threshold / report.sigma_max : options.relative_tolerance;

  std::vector<double> all_small;
  std::vector<DenseVector> kernel_vectors;
  for (auto& part : spectra) {
    if (!part.dense && !part.singular_values.empty() && part.singular_values.front() <= report.threshold) {
      // Lanczos sees each eigenvalue once; deflate found kernel vectors and
      // rerun until the block's smallest value clears the threshold.
      DenseMatrix found(static_cast<Eigen::Index>(part.columns.size()), 0);
      std::vector<double> found_values;
      auto result = detail::LanczosResult{};
      result.lowest_values = {part.singular_values.front() * part.singular_values.front()};
      result.lowest_vectors = part.right_vectors.leftCols(1);
      while (!result.lowest_values.empty() &&
             std::sqrt(std::max(result.lowest_values.front(), 0.0)) <= report.threshold) {
        found.conservativeResize(Eigen::NoChange, found.cols() + 1);
        found.col(found.cols() - 1) = result.lowest_vectors.col(0);
        found_values.push_back(std::sqrt(std::max(result.lowest_values.front(), 0.0)));
        result = detail::lanczos_lowest(part.gram, options.retain, found, kLanczosMaxIterations, kLanczosTolerance);
      }
      std::vector<double> values = found_values;
      for (double lambda : result.lowest_values) values.push_back(std::sqrt(std::max(lambda, 0.0)));
      DenseMatrix vectors(found.rows(), found.cols() + result.lowest_vectors.cols());
      vectors << found, result.lowest_vectors;
      part.singular_values = std::move(values);
      part.right_vectors = std::move(vectors);
    }
    for (std::size_t i = 0; i < part.singular_values.size(); ++i) {
      all_small.push_back(part.singular_values[i]);
      if (part.singular_values[i] > report.threshold) continue;
      DenseVector full = DenseVector::Zero(static_cast<Eigen::Index>(d_in));
      for (std::size_t r = 0; r < part.columns.size(); ++r) {
        full(part.columns[r]) = part.right_vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
      }
      fix_phase(full);
      kernel_vectors.push_back(std::move(full));
    }
  }
  std::sort(all_small.begin(), all_small.end());
  if (all_small.size() > options.retain) all_small.resize(options.retain);
  report.sigma_min = all_small.empty() ? 0.0 : all_small.front();
  report.singular_values.assign(all_small.rbegin(), all_small.rend());
  report.kernel_dim = kernel_vectors.size();
  for (const auto& v : kernel_vectors) report.kernel_basis.emplace_back(cm.num_modes, cm.cutoff, v);
  return report;
}

KernelReport analyze_system(const ConstraintSystem& system, KernelOptions options) {
  options.absolute_floor = std::max(options.absolute_floor, truncation_tail_bound(system));
  return kernel_analysis(build_constraint_matrix(system, options.memory_budget), options);
}

std::vector<KernelReport> cutoff_scan(const ConstraintSystem& system, std::span<const int> cutoffs,
                                      const KernelOptions& options) {
  if (cutoffs.size() < 3) throw InvalidArgument("cutoff_scan needs at least three cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1) throw InvalidArgument("cutoffs must be >= 1");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) throw InvalidArgument("cutoffs must be strictly ascending");
  }
  std::vector<KernelReport> reports(cutoffs.size());
  std::vector<std::exception_ptr> errors(cutoffs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    // Largest cutoffs first so the expensive jobs start early.
    for (std::size_t k = next++; k < cutoffs.size(); k = next++) {
      const std::size_t i = cutoffs.size() - 1 - k;
      try {
        reports[i] = analyze_system(system.at_cutoff(cutoffs[i]), options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = worker_count(cutoffs.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

// ---------------------------------------------------------------- classify

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::UniqueSqueezedState: return "UniqueSqueezedState";
    case VerdictKind::VacuumOnly: return "VacuumOnly";
    case VerdictKind::NoSolution: return "NoSolution";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict classify(std::span<const KernelReport> scan, const ConstraintSystem& system) {
  Verdict v;
  for (const auto& r : scan) {
    v.cutoffs.push_back(r.cutoff);
    v.sigma_min.push_back(r.sigma_min);
    v.kernel_dims.push_back(r.kernel_dim);
  }
  if (scan.size() < 3) {
    v.reason = "need at least three cutoffs";
    return v;
  }

  // Least-squares slope of ln sigma_min against K; exact zeros are clamped to
  // the double-precision floor so the fit stays finite.
  const double floor = 1e-300;
  const double n = static_cast<double>(scan.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : scan) {
    const double x = r.cutoff;
    const double y = std::log(std::max(r.sigma_min, floor));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  v.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double prev = v.sigma_min[v.sigma_min.size() - 2];
  const double last = v.sigma_min.back();
  v.plateau_change = prev > 0.0 ? std::abs(last - prev) / prev : (last == prev ? 0.0 : INFINITY);
  const KernelReport& final_report = scan.back();

  if (system.all_alphas_zero()) {
    if (final_report.kernel_dim == 1) {
      const FockState vac = new_vacuum(system.num_modes(), final_report.cutoff);
      if (fidelity(final_report.kernel_basis.front(), vac) >= 1.0 - 1e-10) {
        v.kind = VerdictKind::VacuumOnly;
        v.reason = "all couplings vanish; the kernel is exactly the vacuum";
        return v;
      }
    }
    v.reason = "all couplings vanish but the kernel is not the vacuum alone";
    return v;
  }

  if (v.log_slope < kDecaySlope) {
    if (final_report.kernel_dim == 1) {
      v.kind = VerdictKind::UniqueSqueezedState;
      v.reason = "sigma_min decays geometrically and the kernel is one-dimensional";
    } else {
      v.reason = "sigma_min decays but the final kernel dimension is " + std::to_string(final_report.kernel_dim);
    }
    return v;
  }
  const bool no_kernel = std::all_of(v.kernel_dims.begin(), v.kernel_dims.end(), [](std::size_t d) { return d == 0; });
  if (no_kernel && v.plateau_change < kPlateauChange && last > final_report.threshold) {
    v.kind = VerdictKind::NoSolution;
    v.reason = "sigma_min is bounded away from zero and has converged";
    return v;
  }
  v.reason = no_kernel ? "sigma_min neither decays nor has settled on a plateau"
                       : "kernel vectors present without geometric decay";
  return v;
}

// ------------------------------------------------------- ansatz & pairwise

AnsatzResidual diagonal_ansatz_residual(std::span<const Complex> alphas, std::span<const Complex> coeffs, int cutoff) {
  const ConstraintSystem system(std::vector<Complex>(alphas.begin(), alphas.end()), cutoff);
  if (coeffs.empty() || coeffs.size() > static_cast<std::size_t>(cutoff) + 1) {
    throw InvalidArgument("ansatz needs between 1 and cutoff+1 coefficients");
  }
  double norm_sq = 0.0;
  for (const Complex& c : coeffs) norm_sq += std::norm(c);
  if (std::abs(std::sqrt(norm_sq) - 1.0) > kNormalizedInputTolerance) {
    throw InvalidArgument("ansatz coefficients must be normalized");
  }
  const int n = system.num_modes();
  const FockBasis basis(n, cutoff);
  std::vector<Complex> amps(basis.dim(), Complex{});
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const std::vector<int> occ(static_cast<std::size_t>(n), static_cast<int>(k));
    amps[basis.index(occ)] = coeffs[k];
  }
  AnsatzResidual out;
  out.per_constraint = constraint_residuals(system, FockState(n, cutoff, std::move(amps)));
  out.max = *std::max_element(out.per_constraint.begin(), out.per_constraint.end());
  return out;
}

PairwiseChainReport pairwise_chain_check(std::span<const Complex> alphas, int cutoff) {
  const int n = static_cast<int>(alphas.size());
  if (n < 2 || n % 2 != 0) throw InvalidArgument("pairwise chain needs an even number of modes, got " + std::to_string(n));
  const ConstraintSystem system(std::vector<Complex>(alphas.begin(), alphas.end()), cutoff);

  std::optional<FockState> product;
  for (int j = 0; j < n / 2; ++j) {
    const SqueezeParamAlpha pair_alpha(alphas[static_cast<std::size_t>(2 * j)], SqueezeContext::TwoMode);
    FockState pair = tmsv_closed_form(pair_alpha, cutoff);
    product = product ? tensor_product(*product, pair) : std::move(pair);
  }

  PairwiseChainReport report;
  report.cutoff = cutoff;
  double worst_alpha = 0.0;
  for (int j = 0; j < n / 2; ++j) {
    const Complex alpha = alphas[static_cast<std::size_t>(2 * j)];
    worst_alpha = std::max(worst_alpha, std::abs(alpha));
    report.pair_residuals.push_back(pair_condition_residual(*product, 2 * j + 1, 2 * j + 2, alpha));
    report.pair_residuals.push_back(pair_condition_residual(*product, 2 * j + 2, 2 * j + 1, alpha));
  }
  report.cyclic_residuals = constraint_residuals(system, *product);
  report.max_pair_residual = *std::max_element(report.pair_residuals.begin(), report.pair_residuals.end());
  report.max_cyclic_residual = *std::max_element(report.cyclic_residuals.begin(), report.cyclic_residuals.end());
  report.pair_tail_bound = std::pow(worst_alpha, cutoff + 1) * std::sqrt(cutoff + 2.0);
  return report;
}

}  // namespace squeezekit
