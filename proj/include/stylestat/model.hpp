#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "stylestat/common.hpp"
#include "stylestat/errors.hpp"
#include "stylestat/psd.hpp"

namespace stylestat {

/// A labeled multivariate Gaussian over style vectors. Immutable once built;
/// covariance is PSD by construction (finalize repairs round-off).
struct GaussianStyleModel {
  std::string label;
  std::uint64_t n = 0;  // observations behind the fit
  VectorXd mean;
  MatrixXd covariance;

  Index dim() const { return mean.size(); }
};

/// Running (count, mean, scatter) statistics merged batch by batch. Memory is
/// O(dim^2) regardless of how many vectors have been absorbed. The merge is
/// the exact pooled two-sample combination, so any batching of the same
/// vectors yields the same statistics up to round-off:
///
///   mean'    = (n * mean + m * batch_mean) / (n + m)
///   scatter' = scatter + batch_scatter
///              + (n * m / (n + m)) * d d^T,   d = batch_mean - mean
///
/// Single-writer: callers serialize updates to one estimator; distinct
/// estimators are independent.
class StreamingEstimator {
 public:
  explicit StreamingEstimator(Index dim) {
    if (dim < 1) {
      throw InvalidDimensionError("StreamingEstimator: dim must be >= 1");
    }
    mean_ = VectorXd::Zero(dim);
    scatter_ = MatrixXd::Zero(dim, dim);
  }

  Index dim() const { return mean_.size(); }
  std::uint64_t count() const { return n_; }
  const VectorXd& mean() const { return mean_; }
  const MatrixXd& scatter() const { return scatter_; }

  /// Absorb a batch of vectors (one per row).
  void update(const Eigen::Ref<const MatrixXd>& batch) {
    const Index m = batch.rows();
    if (m < 1 || batch.cols() != dim()) {
      throw InvalidDimensionError(
          "update: batch must be nonempty with matching dimension");
    }
    if (!batch.allFinite()) {
      throw InvalidDataError("update: batch contains non-finite values");
    }

    const VectorXd batch_mean = batch.colwise().mean();
    MatrixXd centered = batch.rowwise() - batch_mean.transpose();
    MatrixXd batch_scatter = centered.transpose() * centered;

    const double n = static_cast<double>(n_);
    const double md = static_cast<double>(m);
    if (n_ == 0) {
      mean_ = batch_mean;
      scatter_ = std::move(batch_scatter);
    } else {
      const VectorXd delta = batch_mean - mean_;
      mean_ += delta * (md / (n + md));
      scatter_ += batch_scatter;
      scatter_ += (n * md / (n + md)) * (delta * delta.transpose());
    }
    n_ += static_cast<std::uint64_t>(m);
  }

  /// Freeze the accumulated statistics into a model. Sample covariance uses
  /// the n-1 denominator, then round-off is repaired to exact PSD.
  GaussianStyleModel finalize(std::string label) const {
    if (n_ < 2) {
      throw InsufficientDataError(
          "finalize: need at least 2 vectors, have " + std::to_string(n_));
    }
    GaussianStyleModel model;
    model.label = std::move(label);
    model.n = n_;
    model.mean = mean_;
    model.covariance = make_psd(scatter_ / static_cast<double>(n_ - 1));
    return model;
  }

 private:
  std::uint64_t n_ = 0;
  VectorXd mean_;
  MatrixXd scatter_;  // sum of outer products of deviations from mean_
};

}  // namespace stylestat
