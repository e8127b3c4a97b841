#pragma once

#include <vector>

#include "stylestat/common.hpp"
#include "stylestat/convnet.hpp"
#include "stylestat/image.hpp"

namespace stylestat {

/// Variance floor used by instance-normalization statistics: sigma is always
/// sqrt(variance + kAdainEpsilon), never a bare standard deviation.
inline constexpr double kAdainEpsilon = 1e-5;

struct ChannelStats {
  VectorXd means;
  VectorXd sigmas;  // sqrt(population variance + epsilon)
};

/// Per-channel mean and sigma of one feature map, compensated summation.
ChannelStats channel_stats(const FeatureMap& map);

/// AdaIN vector over all layers: for each layer in forward order, all channel
/// means then all channel sigmas. Length = 2 * total channel count.
VectorXd adain_vector(const std::vector<FeatureMap>& maps);

/// C x C Gram matrix F F^T / (H*W) over spatially flattened channels.
/// Symmetric bitwise; PSD up to round-off.
MatrixXd gram_matrix(const FeatureMap& map);

/// Renormalize each channel to the target statistics:
///   out = sigma_style * (x - mean(x)) / sigma(x) + mean_style
/// with sigma(x) = sqrt(var + epsilon). Negative target sigmas are clamped
/// to zero at use (a sampled "sigma" coordinate can come out negative).
FeatureMap apply_adain(const FeatureMap& content,
                       const Eigen::Ref<const VectorXd>& style_means,
                       const Eigen::Ref<const VectorXd>& style_sigmas);

struct LayerDeviation {
  int layer_index = 0;
  double adain_dev = 0.0;  // max |delta| over the layer's means and sigmas
  double gram_dev = 0.0;   // max |delta| over the layer's Gram entries
};

/// Outcome of a region-swap experiment. `homogeneous` records whether the
/// swap provably permutes every feature map: both rectangles padded by the
/// receptive-field radius stay in bounds, keep that margin from each other,
/// and carry identical pixel content outside their cores (the core being the
/// rectangle shrunk by the radius). When it holds, AdaIN and Gram deviations
/// bounded by `tol` is the predicted outcome; when it does not, deviations
/// are reported as observations only.
struct InvarianceReport {
  bool homogeneous = false;
  bool within_tol = false;
  Index receptive_radius = 0;
  double tol = 0.0;
  double max_adain_dev = 0.0;
  double max_gram_dev = 0.0;
  std::vector<LayerDeviation> layers;
};

InvarianceReport invariance_check(const ImageTensor& img, const Rect& rect_a,
                                  const Rect& rect_b, const ConvNetSpec& net,
                                  double tol);

}  // namespace stylestat
