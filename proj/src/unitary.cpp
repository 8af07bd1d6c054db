#include "squeezekit/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "squeezekit/errors.hpp"

namespace squeezekit {

namespace {

constexpr double kUnitRoundoff = 1.1102230246251565e-16;  // 2^-53
constexpr double kTailCheck = 1e-10;

double one_norm(const DenseMatrix& m) {
  return m.cols() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

void require_cutoff_for_r(double r, int cutoff) {
  const double t = std::tanh(r);
  if (std::pow(t, cutoff) >= kTailCheck) {
    throw DomainError("cutoff " + std::to_string(cutoff) + " too small for r = " + std::to_string(r) +
                      ": tanh(r)^cutoff = " + std::to_string(std::pow(t, cutoff)) + " must be < 1e-10");
  }
}

// Flags basis states whose occupations are all <= window.
std::vector<char> window_mask(const FockBasis& basis, int window) {
  std::vector<char> inside(basis.dim(), 0);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    bool ok = true;
    for (int mode = 1; mode <= basis.num_modes() && ok; ++mode) ok = basis.occupation(i, mode) <= window;
    inside[i] = ok ? 1 : 0;
  }
  return inside;
}

double windowed_max(const SparseMatrix& m, const std::vector<char>& inside) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    if (!inside[static_cast<std::size_t>(c)]) continue;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      if (inside[static_cast<std::size_t>(it.row())]) worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double windowed_max(const DenseMatrix& m, const std::vector<char>& inside) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (!inside[static_cast<std::size_t>(c)]) continue;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (inside[static_cast<std::size_t>(r)]) worst = std::max(worst, std::abs(m(r, c)));
    }
  }
  return worst;
}

// Connected components of the nonzero pattern, i.e. the finest splitting of
// the index set into subspaces the matrix leaves invariant in both directions.
std::vector<std::vector<Eigen::Index>> coupled_components(const SparseMatrix& x) {
  const auto n = static_cast<std::size_t>(x.cols());
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index c = 0; c < x.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(x, c); it; ++it) {
      const std::size_t a = find(static_cast<std::size_t>(it.row()));
      const std::size_t b = find(static_cast<std::size_t>(c));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<Eigen::Index>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(static_cast<Eigen::Index>(i));
  std::vector<std::vector<Eigen::Index>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

void require_bch_window(double r, int cutoff, int window) {
  if (window < 0) throw InvalidArgument("window must be >= 0");
  const int limit = cutoff - static_cast<int>(std::ceil(4.0 * r));
  if (window > limit || window >= cutoff) {
    throw InvalidArgument("window " + std::to_string(window) + " too close to cutoff " + std::to_string(cutoff) +
                          " (need window <= cutoff - ceil(4r) = " + std::to_string(limit) + ")");
  }
}

}  // namespace

SqueezeParamXi::SqueezeParamXi(double r, double theta) : r_(r), theta_(theta) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeeze magnitude r must be finite and >= 0");
  if (!std::isfinite(theta)) throw DomainError("squeeze phase theta must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta_ = std::fmod(theta, two_pi);
  if (theta_ < 0.0) theta_ += two_pi;
  if (theta_ >= two_pi) theta_ = 0.0;
}

SqueezeParamAlpha alpha_from_xi(const SqueezeParamXi& xi, SqueezeContext context) {
  return {alpha_sign(context) * std::polar(std::tanh(xi.r()), xi.theta()), context};
}

SqueezeParamXi xi_from_alpha(const SqueezeParamAlpha& alpha) {
  const Complex signed_alpha = alpha_sign(alpha.context()) * alpha.value();
  const double modulus = std::abs(signed_alpha);
  return {std::atanh(modulus), modulus == 0.0 ? 0.0 : std::arg(signed_alpha)};
}

FockOperator generator_single(const SqueezeParamXi& xi, int cutoff) {
  if (cutoff < 2) throw InvalidArgument("generator_single needs cutoff >= 2");
  const FockOperator a = square_ladder(1, cutoff, 1, LadderKind::Lower);
  const FockOperator a_dag = square_ladder(1, cutoff, 1, LadderKind::Raise);
  const Complex z = xi.value();
  return (0.5 * std::conj(z)) * (a * a) - (0.5 * z) * (a_dag * a_dag);
}

FockOperator generator_two(const SqueezeParamXi& xi, int cutoff) {
  if (cutoff < 1) throw InvalidArgument("generator_two needs cutoff >= 1");
  const FockOperator a = square_ladder(2, cutoff, 1, LadderKind::Lower);
  const FockOperator b = square_ladder(2, cutoff, 2, LadderKind::Lower);
  const FockOperator a_dag = square_ladder(2, cutoff, 1, LadderKind::Raise);
  const FockOperator b_dag = square_ladder(2, cutoff, 2, LadderKind::Raise);
  const Complex z = xi.value();
  return z * (a_dag * b_dag) - std::conj(z) * (a * b);
}

DenseMatrix matrix_exp(const DenseMatrix& generator) {
  if (generator.rows() != generator.cols()) throw InvalidArgument("matrix_exp needs a square matrix");
  const Eigen::Index n = generator.rows();
  const double norm = one_norm(generator);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const DenseMatrix scaled = generator / std::ldexp(1.0, squarings);
  const double nu = norm / std::ldexp(1.0, squarings);

  DenseMatrix result = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  double bound = nu;  // nu^(m+1)/(m+1)! for the current m
  for (int m = 1; m <= 30 && nu > 0.0; ++m) {
    term = (term * scaled) / static_cast<double>(m);
    result += term;
    bound *= nu / (m + 1);
    if (bound / (1.0 - nu / (m + 2)) < kUnitRoundoff) break;
  }
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  return result;
}

FockOperator matrix_exp(const FockOperator& generator) {
  if (!generator.is_square()) throw InvalidArgument("matrix_exp needs a square operator");
  const SparseMatrix& x = generator.matrix();
  std::vector<Eigen::Triplet<Complex, std::ptrdiff_t>> triplets;
  for (const auto& comp : coupled_components(x)) {
    const auto k = static_cast<Eigen::Index>(comp.size());
    std::vector<Eigen::Index> position(static_cast<std::size_t>(x.cols()), -1);
    DenseMatrix sub = DenseMatrix::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j) position[static_cast<std::size_t>(comp[static_cast<std::size_t>(j)])] = j;
    for (Eigen::Index j = 0; j < k; ++j) {
      for (SparseMatrix::InnerIterator it(x, comp[static_cast<std::size_t>(j)]); it; ++it) {
        sub(position[static_cast<std::size_t>(it.row())], j) = it.value();
      }
    }
    const DenseMatrix e = matrix_exp(sub);
    for (Eigen::Index j = 0; j < k; ++j) {
      for (Eigen::Index i = 0; i < k; ++i) {
        if (e(i, j) != Complex{}) triplets.emplace_back(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)], e(i, j));
      }
    }
  }
  SparseMatrix result(x.rows(), x.cols());
  result.setFromTriplets(triplets.begin(), triplets.end());
  return {generator.num_modes(), generator.domain_cutoff(), generator.codomain_cutoff(), std::move(result)};
}

FockState apply_matrix_exp(const FockOperator& generator, const FockState& state) {
  if (!generator.is_square() || generator.domain_cutoff() != state.cutoff() ||
      generator.num_modes() != state.num_modes()) {
    throw InvalidArgument("apply_matrix_exp: generator and state shapes differ");
  }
  const SparseMatrix& x = generator.matrix();
  const auto dim = static_cast<std::size_t>(x.cols());

  // Forward closure of the state's support under X.
  std::vector<char> reached(dim, 0);
  std::vector<std::ptrdiff_t> frontier;
  for (std::size_t i = 0; i < dim; ++i) {
    if (state[i] != Complex{}) {
      reached[i] = 1;
      frontier.push_back(static_cast<std::ptrdiff_t>(i));
    }
  }
  while (!frontier.empty()) {
    const std::ptrdiff_t col = frontier.back();
    frontier.pop_back();
    for (SparseMatrix::InnerIterator it(x, col); it; ++it) {
      const auto row = static_cast<std::size_t>(it.row());
      if (!reached[row]) {
        reached[row] = 1;
        frontier.push_back(it.row());
      }
    }
  }
  std::vector<std::ptrdiff_t> block;
  std::vector<std::ptrdiff_t> position(dim, -1);
  for (std::size_t i = 0; i < dim; ++i) {
    if (reached[i]) {
      position[i] = static_cast<std::ptrdiff_t>(block.size());
      block.push_back(static_cast<std::ptrdiff_t>(i));
    }
  }
  const auto k = static_cast<Eigen::Index>(block.size());
  DenseMatrix sub = DenseMatrix::Zero(k, k);
  DenseVector v(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    v(j) = state[static_cast<std::size_t>(block[static_cast<std::size_t>(j)])];
    for (SparseMatrix::InnerIterator it(x, block[static_cast<std::size_t>(j)]); it; ++it) {
      sub(position[static_cast<std::size_t>(it.row())], j) = it.value();
    }
  }
  const DenseVector w = matrix_exp(sub) * v;
  std::vector<Complex> amps(dim, Complex{});
  for (Eigen::Index j = 0; j < k; ++j) amps[static_cast<std::size_t>(block[static_cast<std::size_t>(j)])] = w(j);
  return {state.num_modes(), state.cutoff(), std::move(amps)};
}

int auto_cutoff_for_r(double r) {
  const double t = std::tanh(r);
  int k = 4;
  while (std::pow(t, k) >= 1e-12) k += 2;
  return k;
}

FockState squeeze_single(const SqueezeParamXi& xi, int cutoff) {
  if (cutoff <= 0) cutoff = auto_cutoff_for_r(xi.r());
  if (cutoff < 2) throw InvalidArgument("squeeze_single needs cutoff >= 2");
  require_cutoff_for_r(xi.r(), cutoff);
  return apply_matrix_exp(generator_single(xi, cutoff), new_vacuum(1, cutoff));
}

FockState squeeze_two(const SqueezeParamXi& xi, int cutoff) {
  if (cutoff <= 0) cutoff = auto_cutoff_for_r(xi.r());
  require_cutoff_for_r(xi.r(), cutoff);
  return apply_matrix_exp(generator_two(xi, cutoff), new_vacuum(2, cutoff));
}

double bch_residual_two(const SqueezeParamXi& xi, int cutoff, int window) {
  require_bch_window(xi.r(), cutoff, window);
  const SparseMatrix t = matrix_exp(generator_two(xi, cutoff)).matrix();
  const SparseMatrix a = square_ladder(2, cutoff, 1, LadderKind::Lower).matrix();
  const SparseMatrix b = square_ladder(2, cutoff, 2, LadderKind::Lower).matrix();
  const SparseMatrix a_dag = a.adjoint();
  const SparseMatrix b_dag = b.adjoint();
  const Complex phase = std::polar(1.0, xi.theta());
  const double ch = std::cosh(xi.r());
  const double sh = std::sinh(xi.r());
  const SparseMatrix image_a = ch * a - (phase * sh) * b_dag;
  const SparseMatrix image_b = ch * b - (phase * sh) * a_dag;
  const auto inside = window_mask(FockBasis(2, cutoff), window);
  const SparseMatrix res_a = t * a - image_a * t;
  const SparseMatrix res_b = t * b - image_b * t;
  return std::max(windowed_max(res_a, inside), windowed_max(res_b, inside));
}

double bch_conjugation_residual_two(const SqueezeParamXi& xi, int cutoff, int window) {
  require_bch_window(xi.r(), cutoff, window);
  const SparseMatrix t = matrix_exp(generator_two(xi, cutoff)).matrix();
  const SparseMatrix t_dag = t.adjoint();
  const SparseMatrix a = square_ladder(2, cutoff, 1, LadderKind::Lower).matrix();
  const SparseMatrix b = square_ladder(2, cutoff, 2, LadderKind::Lower).matrix();
  const SparseMatrix a_dag = a.adjoint();
  const SparseMatrix b_dag = b.adjoint();
  const Complex phase = std::polar(1.0, xi.theta());
  const double ch = std::cosh(xi.r());
  const double sh = std::sinh(xi.r());
  const auto inside = window_mask(FockBasis(2, cutoff), window);
  const SparseMatrix res_a = SparseMatrix(t * a * t_dag) - (ch * a - (phase * sh) * b_dag);
  const SparseMatrix res_b = SparseMatrix(t * b * t_dag) - (ch * b - (phase * sh) * a_dag);
  return std::max(windowed_max(res_a, inside), windowed_max(res_b, inside));
}

double commutator_check_single(const SqueezeParamAlpha& alpha, int cutoff, int window) {
  if (window < 0 || window > cutoff - 2) {
    throw InvalidArgument("window " + std::to_string(window) + " too large for cutoff " + std::to_string(cutoff) +
                          " (need window <= cutoff - 2)");
  }
  const DenseMatrix a = square_ladder(1, cutoff, 1, LadderKind::Lower).dense();
  const DenseMatrix a_dag = a.adjoint();
  const DenseMatrix coupling = 0.5 * alpha.value() * (a_dag * a_dag);
  const auto n = a.rows();

  // a^dagger^2 is nilpotent on the box, so the series terminates exactly.
  DenseMatrix e = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  for (int k = 1; k <= cutoff; ++k) {
    term = (coupling * term) / static_cast<double>(k);
    if (term.cwiseAbs().maxCoeff() == 0.0) break;
    e += term;
  }
  const DenseMatrix residual = (a * e - e * a) - alpha.value() * (a_dag * e);
  return windowed_max(residual, window_mask(FockBasis(1, cutoff), window));
}

}  // namespace squeezekit
