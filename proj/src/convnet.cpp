#include "stylestat/convnet.hpp"

#include <cmath>

#include "stylestat/rng.hpp"

namespace stylestat {

ConvNetSpec ConvNetSpec::standard(std::uint64_t weight_seed) {
  ConvNetSpec spec;
  spec.input_channels = 3;
  spec.layers = {{8, 3}, {16, 3}, {32, 3}};
  spec.weight_seed = weight_seed;
  return spec;
}

void ConvNetSpec::validate() const {
  if (input_channels < 1) {
    throw InvalidInputError("ConvNetSpec: input_channels must be >= 1");
  }
  if (layers.empty()) throw InvalidInputError("ConvNetSpec: need >= 1 layer");
  for (const auto& layer : layers) {
    if (layer.out_channels < 1) {
      throw InvalidInputError("ConvNetSpec: out_channels must be >= 1");
    }
    if (layer.kernel_size < 1 || layer.kernel_size % 2 == 0) {
      throw InvalidInputError("ConvNetSpec: kernel_size must be odd and >= 1");
    }
  }
}

Index ConvNetSpec::receptive_radius() const {
  Index radius = 0;
  for (const auto& layer : layers) radius += (layer.kernel_size - 1) / 2;
  return radius;
}

Index ConvNetSpec::adain_dim() const {
  Index sum = 0;
  for (const auto& layer : layers) sum += layer.out_channels;
  return 2 * sum;
}

namespace {

// weights[c_out * in_channels + c_in] is a k x k kernel.
std::vector<MatrixXd> layer_weights(SequentialRng& rng, Index in_channels,
                                    const ConvLayerSpec& layer) {
  const int k = layer.kernel_size;
  const double bound =
      1.0 / std::sqrt(static_cast<double>(in_channels) * k * k);
  std::vector<MatrixXd> weights;
  weights.reserve(static_cast<std::size_t>(layer.out_channels * in_channels));
  for (Index co = 0; co < layer.out_channels; ++co) {
    for (Index ci = 0; ci < in_channels; ++ci) {
      MatrixXd kernel(k, k);
      for (int ky = 0; ky < k; ++ky) {
        for (int kx = 0; kx < k; ++kx) {
          kernel(ky, kx) = rng.next_symmetric(bound);
        }
      }
      weights.push_back(std::move(kernel));
    }
  }
  return weights;
}

std::vector<MatrixXd> conv_relu(const std::vector<MatrixXd>& input,
                                const std::vector<MatrixXd>& weights,
                                const ConvLayerSpec& layer) {
  const Index in_channels = static_cast<Index>(input.size());
  const Index height = input.front().rows();
  const Index width = input.front().cols();
  const int k = layer.kernel_size;
  const int radius = (k - 1) / 2;

  std::vector<MatrixXd> output;
  output.reserve(static_cast<std::size_t>(layer.out_channels));
  for (Index co = 0; co < layer.out_channels; ++co) {
    MatrixXd plane(height, width);
    for (Index y = 0; y < height; ++y) {
      for (Index x = 0; x < width; ++x) {
        double acc = 0.0;
        for (Index ci = 0; ci < in_channels; ++ci) {
          const MatrixXd& kernel =
              weights[static_cast<std::size_t>(co * in_channels + ci)];
          const MatrixXd& src = input[static_cast<std::size_t>(ci)];
          for (int ky = 0; ky < k; ++ky) {
            // Replicate padding: out-of-range taps clamp to the edge pixel.
            Index sy = y + ky - radius;
            sy = sy < 0 ? 0 : (sy >= height ? height - 1 : sy);
            for (int kx = 0; kx < k; ++kx) {
              Index sx = x + kx - radius;
              sx = sx < 0 ? 0 : (sx >= width ? width - 1 : sx);
              acc += kernel(ky, kx) * src(sy, sx);
            }
          }
        }
        plane(y, x) = acc > 0.0 ? acc : 0.0;
      }
    }
    output.push_back(std::move(plane));
  }
  return output;
}

}  // namespace

std::vector<FeatureMap> extract_features(const ImageTensor& img,
                                         const ConvNetSpec& net) {
  net.validate();
  if (img.channels() != net.input_channels) {
    throw InvalidInputError("extract_features: image has " +
                            std::to_string(img.channels()) +
                            " channels, net expects " +
                            std::to_string(net.input_channels));
  }
  if (img.height() < 1 || img.width() < 1) {
    throw InvalidInputError("extract_features: empty image");
  }

  SequentialRng rng(net.weight_seed);
  std::vector<FeatureMap> maps;
  maps.reserve(net.layers.size());

  const std::vector<MatrixXd>* current = &img.planes;
  Index in_channels = net.input_channels;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto weights = layer_weights(rng, in_channels, net.layers[l]);
    FeatureMap map;
    map.layer_index = static_cast<int>(l);
    map.channels = conv_relu(*current, weights, net.layers[l]);
    maps.push_back(std::move(map));
    current = &maps.back().channels;
    in_channels = net.layers[l].out_channels;
  }
  return maps;
}

}  // namespace stylestat
