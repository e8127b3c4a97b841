#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "stylestat/common.hpp"
#include "stylestat/errors.hpp"

namespace stylestat {

/// Relative tolerance below which negative eigenvalues of a nominally PSD
/// matrix are treated as accumulation round-off and clamped to zero.
inline constexpr double kPsdClampTol = 1e-9;

/// Symmetry test: |a_ij - a_ji| <= tol * (1 + |a_ij|) for all i, j.
template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m, double tol = 1e-9) {
  using T = typename Derived::Scalar;
  if (m.rows() != m.cols()) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j + 1; i < m.rows(); ++i) {
      const T a = m(i, j);
      const T b = m(j, i);
      if (!(std::abs(a - b) <= tol * (T(1) + std::abs(a)))) return false;
    }
  }
  return true;
}

template <typename T>
struct EigenDecomposition {
  VectorX<T> eigenvalues;   // descending
  MatrixX<T> eigenvectors;  // orthonormal columns, matching order
};

/// Eigendecomposition of a symmetric matrix with a canonical ordering:
/// eigenvalues descending, each eigenvector's first nonzero component made
/// positive. The ordering is what makes downstream consumers (matrix square
/// roots, Gaussian sampling) reproducible across runs.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> sym_eigen(
    const Eigen::MatrixBase<Derived>& m_expr) {
  using T = typename Derived::Scalar;
  MatrixX<T> m = m_expr;
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidDimensionError("sym_eigen: matrix must be square and nonempty");
  }
  if (!is_symmetric(m)) {
    throw SymmetryError("sym_eigen: input violates the symmetry tolerance");
  }

  Eigen::SelfAdjointEigenSolver<MatrixX<T>> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("sym_eigen: eigensolver failed to converge");
  }

  const Index n = m.rows();
  EigenDecomposition<T> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (Index k = 0; k < n; ++k) {
    const Index src = n - 1 - k;
    out.eigenvalues(k) = solver.eigenvalues()(src);
    out.eigenvectors.col(k) = solver.eigenvectors().col(src);
    for (Index i = 0; i < n; ++i) {
      const T v = out.eigenvectors(i, k);
      if (v != T(0)) {
        if (v < T(0)) out.eigenvectors.col(k) = -out.eigenvectors.col(k);
        break;
      }
    }
  }
  return out;
}

/// Principal square root of a symmetric PSD matrix via eigendecomposition.
/// Eigenvalues in [-clamp_tol * max_eig, 0) are treated as round-off and
/// clamped to zero; anything more negative is a genuine PSD violation.
template <typename Derived>
MatrixX<typename Derived::Scalar> psd_sqrt(const Eigen::MatrixBase<Derived>& m,
                                           double clamp_tol = kPsdClampTol) {
  using T = typename Derived::Scalar;
  auto eig = sym_eigen(m);
  const T max_eig = std::max(eig.eigenvalues(0), T(0));
  const T floor = -static_cast<T>(clamp_tol) * max_eig;
  VectorX<T> roots(eig.eigenvalues.size());
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const T lambda = eig.eigenvalues(i);
    if (lambda < floor) {
      throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                        " below the clamp tolerance");
    }
    roots(i) = lambda > T(0) ? std::sqrt(lambda) : T(0);
  }
  MatrixX<T> result = eig.eigenvectors * roots.asDiagonal() *
                      eig.eigenvectors.transpose();
  // Exact symmetry survives the reconstruction only up to round-off.
  result = ((result + result.transpose()) / T(2)).eval();
  return result;
}

/// Nearest-PSD repair by eigenvalue clamping. A matrix whose spectrum is
/// already nonnegative is returned unchanged (exact fixed point).
template <typename Derived>
MatrixX<typename Derived::Scalar> make_psd(const Eigen::MatrixBase<Derived>& m) {
  using T = typename Derived::Scalar;
  MatrixX<T> sym = ((m + m.transpose()) / T(2)).eval();
  auto eig = sym_eigen(sym);
  if (eig.eigenvalues(eig.eigenvalues.size() - 1) >= T(0)) {
    return sym;
  }
  VectorX<T> clamped = eig.eigenvalues.cwiseMax(T(0));
  MatrixX<T> result =
      eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.transpose();
  result = ((result + result.transpose()) / T(2)).eval();
  return result;
}

}  // namespace stylestat
