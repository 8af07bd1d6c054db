#include "lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "squeezekit/errors.hpp"

namespace squeezekit::detail {

namespace {

// splitmix64, so the start vector is identical on every platform.
double hashed_unit(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) * 0x1.0p-53 - 0.5;
}

void project_out(DenseVector& w, const DenseMatrix& basis, Eigen::Index columns) {
  if (columns == 0) return;
  const auto block = basis.leftCols(columns);
  w -= block * (block.adjoint() * w);
}

}  // namespace

std::size_t lanczos_bytes(std::size_t n, std::size_t max_iterations) {
  return (std::min(n, max_iterations) + 2) * n * sizeof(Complex);
}

LanczosResult lanczos_lowest(const SparseMatrix& hermitian, std::size_t wanted, const DenseMatrix& deflate,
                             std::size_t max_iterations, double tolerance) {
  const Eigen::Index n = hermitian.rows();
  const Eigen::Index free_dim = n - deflate.cols();
  if (free_dim <= 0) return {};
  const Eigen::Index cap = std::min<Eigen::Index>(free_dim, static_cast<Eigen::Index>(max_iterations));

  DenseMatrix krylov(n, cap);
  std::vector<double> diag;
  std::vector<double> offdiag;

  DenseVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex{hashed_unit(2 * static_cast<std::uint64_t>(i)), hashed_unit(2 * static_cast<std::uint64_t>(i) + 1)};
  }
  project_out(v, deflate, deflate.cols());
  project_out(v, deflate, deflate.cols());
  v.normalize();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  for (Eigen::Index j = 0; j < cap; ++j) {
    krylov.col(j) = v;
    DenseVector w = hermitian * v;
    const double a = v.dot(w).real();
    diag.push_back(a);
    w -= a * v;
    if (j > 0) w -= offdiag.back() * krylov.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      project_out(w, krylov, j + 1);
      project_out(w, deflate, deflate.cols());
    }
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(diag.size());
    const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
    const Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(offdiag.data(), m - 1))
                                    : Eigen::VectorXd();
    const double scale = std::max({std::abs(d.maxCoeff()), std::abs(d.minCoeff()), 1e-300});
    const bool breakdown = b <= 1e-13 * scale;
    const bool last = j + 1 == cap;
    if (breakdown || last || (j + 1) % 10 == 0) {
      tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      const Eigen::VectorXd& theta = tri.eigenvalues();
      const double top = std::max(std::abs(theta(m - 1)), 1e-300);
      const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(wanted), m);
      bool converged = true;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (std::abs(b * tri.eigenvectors()(m - 1, i)) > tolerance * top) converged = false;
      }
      // An exhausted Krylov space is exact: the remaining residual is roundoff.
      if (breakdown || converged || (last && cap == free_dim)) {
        LanczosResult out;
        out.iterations = static_cast<std::size_t>(m);
        out.largest_value = theta(m - 1);
        out.lowest_values.assign(theta.data(), theta.data() + k);
        out.lowest_vectors = krylov.leftCols(m) * tri.eigenvectors().leftCols(k).cast<Complex>();
        return out;
      }
      if (last) break;
    }
    offdiag.push_back(b);
    v = w / b;
  }
  throw NumericalError("Lanczos did not converge in " + std::to_string(cap) + " iterations (dimension " +
                       std::to_string(n) + ")");
}

}  // namespace squeezekit::detail
