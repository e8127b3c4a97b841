#pragma once

#include <cstdint>

#include "stylestat/common.hpp"
#include "stylestat/errors.hpp"
#include "stylestat/model.hpp"
#include "stylestat/psd.hpp"
#include "stylestat/rng.hpp"

namespace stylestat {

/// Eigenvalues below this fraction of the largest are treated as exact zeros
/// when sampling, so draws from a rank-deficient model stay on its support
/// subspace instead of picking up noise along null directions.
inline constexpr double kSupportCutoff = 1e-12;

/// Draw `count` vectors (one per row) from the model: x = mean + V sqrt(L) z
/// with (V, L) the canonical eigendecomposition of the covariance and z a
/// standard-normal stream indexed by (seed, draw, coordinate). Identical
/// (model, seed, count) inputs give bit-identical output; the draws for a
/// given seed are a prefix-stable sequence, so count=3 repeats the first
/// rows of count=5.
inline MatrixXd sample(const GaussianStyleModel& model, std::uint64_t seed,
                       Index count) {
  if (count < 1) throw InvalidInputError("sample: count must be >= 1");
  const Index dim = model.dim();

  const auto eig = sym_eigen(model.covariance);
  const double max_eig = std::max(eig.eigenvalues(0), 0.0);
  const double floor = -kPsdClampTol * max_eig;
  VectorXd roots(dim);
  for (Index i = 0; i < dim; ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < floor) {
      throw NotPsdError("sample: covariance has a negative eigenvalue beyond "
                        "the clamp tolerance");
    }
    roots(i) = lambda > kSupportCutoff * max_eig ? std::sqrt(lambda) : 0.0;
  }

  MatrixXd draws(count, dim);
  VectorXd z(dim);
  for (Index k = 0; k < count; ++k) {
    const std::uint64_t base =
        static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(dim);
    for (Index i = 0; i < dim; ++i) {
      z(i) = roots(i) != 0.0
                 ? roots(i) * normal_at(seed, base + static_cast<std::uint64_t>(i))
                 : 0.0;
    }
    draws.row(k) = (model.mean + eig.eigenvectors * z).transpose();
  }
  return draws;
}

}  // namespace stylestat
