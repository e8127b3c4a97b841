#pragma once

#include <cstdint>
#include <vector>

#include "stylestat/common.hpp"
#include "stylestat/errors.hpp"
#include "stylestat/image.hpp"

namespace stylestat {

struct ConvLayerSpec {
  Index out_channels = 0;
  int kernel_size = 3;  // odd; stride 1, replicate same-padding, ReLU
};

/// Architecture + weight seed of the deterministic feature extractor. The
/// weights are fully determined by the seed: uniform in
/// [-1/sqrt(fan_in), 1/sqrt(fan_in)], drawn in a fixed traversal order
/// (layer, out channel, in channel, kernel row, kernel column).
struct ConvNetSpec {
  Index input_channels = 3;
  std::vector<ConvLayerSpec> layers;
  std::uint64_t weight_seed = 0;

  /// 3 layers of (8, 16, 32) channels with 3x3 kernels.
  static ConvNetSpec standard(std::uint64_t weight_seed = 0);

  void validate() const;

  /// Chebyshev radius of the input patch influencing one output activation.
  Index receptive_radius() const;

  /// Length of the AdaIN vector this net produces: 2 * sum of channel counts.
  Index adain_dim() const;
};

/// Post-activation feature map of one layer.
struct FeatureMap {
  int layer_index = 0;
  std::vector<MatrixXd> channels;

  Index height() const { return channels.empty() ? 0 : channels.front().rows(); }
  Index width() const { return channels.empty() ? 0 : channels.front().cols(); }
  Index channel_count() const { return static_cast<Index>(channels.size()); }
};

/// Forward pass through every layer: replicate-padded 3x3-style convolution,
/// stride 1, ReLU. Deterministic given (image, weight_seed) — fixed loop
/// order, no reassociation.
std::vector<FeatureMap> extract_features(const ImageTensor& img,
                                         const ConvNetSpec& net);

}  // namespace stylestat
