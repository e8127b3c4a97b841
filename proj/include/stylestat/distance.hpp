#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "stylestat/common.hpp"
#include "stylestat/errors.hpp"
#include "stylestat/model.hpp"
#include "stylestat/psd.hpp"

namespace stylestat {

enum class Metric { W2, W2Squared, KL, Bhattacharyya };

std::string metric_name(Metric metric);
Metric metric_from_name(const std::string& name);
inline bool metric_is_symmetric(Metric metric) { return metric != Metric::KL; }

/// Condition-number cap for the eigendecomposition-based inversions behind
/// the KL and Bhattacharyya comparators. Spectra worse than this are treated
/// as degenerate rather than silently regularized.
inline constexpr double kConditionCap = 1e12;

namespace detail {

/// tr((A^{1/2} B A^{1/2})^{1/2}) for PSD A, B — the cross term of the
/// Gaussian W2 closed form, computed through the symmetric product so only
/// self-adjoint eigenproblems are ever solved.
template <typename T>
T bures_cross_trace(const MatrixX<T>& cov_a, const MatrixX<T>& cov_b) {
  const MatrixX<T> root_a = psd_sqrt(cov_a);
  MatrixX<T> inner = root_a * cov_b * root_a;
  inner = ((inner + inner.transpose()) / T(2)).eval();
  const auto eig = sym_eigen(inner);
  const T max_eig = std::max(eig.eigenvalues(0), T(0));
  const T floor = -static_cast<T>(kPsdClampTol) * max_eig;
  T trace = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const T lambda = eig.eigenvalues(i);
    if (lambda < floor) {
      throw NotPsdError("bures_cross_trace: product spectrum not PSD");
    }
    if (lambda > T(0)) trace += std::sqrt(lambda);
  }
  return trace;
}

/// Spectrum of a covariance for use as an inverse: rejects rank deficiency
/// and ill-conditioning beyond kConditionCap.
template <typename T>
EigenDecomposition<T> invertible_spectrum(const MatrixX<T>& cov,
                                          const std::string& who) {
  auto eig = sym_eigen(cov);
  const T max_eig = eig.eigenvalues(0);
  const T min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (!(max_eig > T(0)) || !(min_eig > max_eig / static_cast<T>(kConditionCap))) {
    throw DegenerateModelError(who + ": covariance is singular or beyond the "
                               "condition cap; distance undefined");
  }
  return eig;
}

template <typename T>
T log_det(const EigenDecomposition<T>& eig) {
  T sum = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) sum += std::log(eig.eigenvalues(i));
  return sum;
}

}  // namespace detail

/// Squared 2-Wasserstein distance between Gaussians:
///   ||mean_a - mean_b||^2 + tr(cov_a) + tr(cov_b)
///     - 2 tr((cov_a^{1/2} cov_b cov_a^{1/2})^{1/2})
/// Well-defined for rank-deficient covariances. Small negative trace residue
/// from round-off is clamped to zero; a residue beyond -1e-9 * tr(cov_a +
/// cov_b) raises a numerical error instead of being hidden.
template <typename T>
T wasserstein2_squared(const VectorX<T>& mean_a, const MatrixX<T>& cov_a,
                       const VectorX<T>& mean_b, const MatrixX<T>& cov_b) {
  if (mean_a.size() != mean_b.size() || cov_a.rows() != cov_b.rows() ||
      cov_a.rows() != mean_a.size()) {
    throw InvalidDimensionError("wasserstein2_squared: dimension mismatch");
  }
  const T mean_term = (mean_a - mean_b).squaredNorm();
  const T trace_sum = cov_a.trace() + cov_b.trace();
  T residue = trace_sum - 2 * detail::bures_cross_trace(cov_a, cov_b);
  if (residue < T(0)) {
    if (residue < -static_cast<T>(kPsdClampTol) * trace_sum) {
      throw NumericalError(
          "wasserstein2_squared: negative trace residue beyond tolerance");
    }
    residue = 0;
  }
  return mean_term + residue;
}

/// KL divergence KL(a || b) between non-degenerate Gaussians.
template <typename T>
T gaussian_kl(const VectorX<T>& mean_a, const MatrixX<T>& cov_a,
              const VectorX<T>& mean_b, const MatrixX<T>& cov_b) {
  if (mean_a.size() != mean_b.size() || cov_a.rows() != cov_b.rows() ||
      cov_a.rows() != mean_a.size()) {
    throw InvalidDimensionError("gaussian_kl: dimension mismatch");
  }
  const auto eig_a = detail::invertible_spectrum(cov_a, "gaussian_kl: first argument");
  const auto eig_b = detail::invertible_spectrum(cov_b, "gaussian_kl: second argument");
  const Index d = mean_a.size();

  // tr(cov_b^{-1} cov_a) through cov_b's eigenbasis.
  const MatrixX<T> w = eig_b.eigenvectors.transpose() * cov_a * eig_b.eigenvectors;
  T trace_term = 0;
  for (Index i = 0; i < d; ++i) trace_term += w(i, i) / eig_b.eigenvalues(i);

  const VectorX<T> y = eig_b.eigenvectors.transpose() * (mean_b - mean_a);
  T mahalanobis = 0;
  for (Index i = 0; i < d; ++i) mahalanobis += y(i) * y(i) / eig_b.eigenvalues(i);

  const T value = T(0.5) * (trace_term + mahalanobis - static_cast<T>(d) +
                            detail::log_det(eig_b) - detail::log_det(eig_a));
  return std::max(value, T(0));
}

/// Bhattacharyya distance between non-degenerate Gaussians.
template <typename T>
T gaussian_bhattacharyya(const VectorX<T>& mean_a, const MatrixX<T>& cov_a,
                         const VectorX<T>& mean_b, const MatrixX<T>& cov_b) {
  if (mean_a.size() != mean_b.size() || cov_a.rows() != cov_b.rows() ||
      cov_a.rows() != mean_a.size()) {
    throw InvalidDimensionError("gaussian_bhattacharyya: dimension mismatch");
  }
  const auto eig_a =
      detail::invertible_spectrum(cov_a, "gaussian_bhattacharyya: first argument");
  const auto eig_b =
      detail::invertible_spectrum(cov_b, "gaussian_bhattacharyya: second argument");
  const MatrixX<T> mixed = ((cov_a + cov_b) / T(2)).eval();
  const auto eig_m =
      detail::invertible_spectrum(mixed, "gaussian_bhattacharyya: mixture");

  const VectorX<T> y = eig_m.eigenvectors.transpose() * (mean_a - mean_b);
  T mahalanobis = 0;
  for (Index i = 0; i < y.size(); ++i) mahalanobis += y(i) * y(i) / eig_m.eigenvalues(i);

  const T value = mahalanobis / T(8) +
                  T(0.5) * (detail::log_det(eig_m) -
                            T(0.5) * (detail::log_det(eig_a) + detail::log_det(eig_b)));
  return std::max(value, T(0));
}

// Model-level API.

double w2_squared(const GaussianStyleModel& a, const GaussianStyleModel& b);
double w2(const GaussianStyleModel& a, const GaussianStyleModel& b);
double kl_divergence(const GaussianStyleModel& a, const GaussianStyleModel& b);
double bhattacharyya(const GaussianStyleModel& a, const GaussianStyleModel& b);

double evaluate_metric(Metric metric, const GaussianStyleModel& a,
                       const GaussianStyleModel& b);

/// Labeled pairwise distance matrix. Diagonal is exactly zero by
/// construction; symmetric metrics are computed on the upper triangle and
/// mirrored, so values(i, j) == values(j, i) bitwise.
struct DistanceMatrix {
  std::vector<std::string> labels;
  MatrixXd values;
  Metric metric = Metric::W2;

  Index size() const { return values.rows(); }
};

/// Pairwise distances between >= 2 models with unique labels. Pair
/// computations are independent; `threads` = 0 picks the hardware
/// concurrency. The result is bitwise independent of the thread count.
DistanceMatrix distance_matrix(const std::vector<GaussianStyleModel>& models,
                               Metric metric, unsigned threads = 0);

/// k nearest labels to `label`, ascending by distance, ties broken
/// lexicographically. Requires k >= 1 and k < matrix size.
std::vector<std::pair<std::string, double>> nearest_neighbors(
    const DistanceMatrix& matrix, const std::string& label, Index k);

// CSV: leading "# metric=..." comment, header row of labels, one labeled row
// per model with 17-significant-digit values (bit round-trippable).
void write_distance_csv(const DistanceMatrix& matrix, const std::filesystem::path& path);
DistanceMatrix read_distance_csv(const std::filesystem::path& path);

}  // namespace stylestat
