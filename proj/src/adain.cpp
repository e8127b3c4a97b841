#include "stylestat/adain.hpp"

#include <algorithm>
#include <cmath>

#include "stylestat/errors.hpp"

namespace stylestat {

namespace {

void check_map(const FeatureMap& map, const char* op) {
  if (map.channel_count() < 1 || map.height() < 1 || map.width() < 1) {
    throw InvalidInputError(std::string(op) + ": empty feature map");
  }
}

}  // namespace

ChannelStats channel_stats(const FeatureMap& map) {
  check_map(map, "channel_stats");
  const double count = static_cast<double>(map.height() * map.width());
  ChannelStats stats;
  stats.means.resize(map.channel_count());
  stats.sigmas.resize(map.channel_count());
  for (Index c = 0; c < map.channel_count(); ++c) {
    const MatrixXd& plane = map.channels[static_cast<std::size_t>(c)];
    KahanSum sum;
    for (Index y = 0; y < plane.rows(); ++y) {
      for (Index x = 0; x < plane.cols(); ++x) sum.add(plane(y, x));
    }
    const double mean = sum.value() / count;
    KahanSum sq;
    for (Index y = 0; y < plane.rows(); ++y) {
      for (Index x = 0; x < plane.cols(); ++x) {
        const double d = plane(y, x) - mean;
        sq.add(d * d);
      }
    }
    stats.means(c) = mean;
    stats.sigmas(c) = std::sqrt(sq.value() / count + kAdainEpsilon);
  }
  return stats;
}

VectorXd adain_vector(const std::vector<FeatureMap>& maps) {
  if (maps.empty()) throw InvalidInputError("adain_vector: no feature maps");
  Index total = 0;
  for (const auto& map : maps) total += map.channel_count();
  VectorXd vec(2 * total);
  Index offset = 0;
  for (const auto& map : maps) {
    const auto stats = channel_stats(map);
    const Index c = map.channel_count();
    vec.segment(offset, c) = stats.means;
    vec.segment(offset + c, c) = stats.sigmas;
    offset += 2 * c;
  }
  return vec;
}

MatrixXd gram_matrix(const FeatureMap& map) {
  check_map(map, "gram_matrix");
  const Index c = map.channel_count();
  const double count = static_cast<double>(map.height() * map.width());
  MatrixXd gram(c, c);
  for (Index i = 0; i < c; ++i) {
    const MatrixXd& fi = map.channels[static_cast<std::size_t>(i)];
    for (Index j = i; j < c; ++j) {
      const MatrixXd& fj = map.channels[static_cast<std::size_t>(j)];
      KahanSum sum;
      for (Index y = 0; y < fi.rows(); ++y) {
        for (Index x = 0; x < fi.cols(); ++x) sum.add(fi(y, x) * fj(y, x));
      }
      gram(i, j) = sum.value() / count;
      gram(j, i) = gram(i, j);
    }
  }
  return gram;
}

FeatureMap apply_adain(const FeatureMap& content,
                       const Eigen::Ref<const VectorXd>& style_means,
                       const Eigen::Ref<const VectorXd>& style_sigmas) {
  check_map(content, "apply_adain");
  if (style_means.size() != content.channel_count() ||
      style_sigmas.size() != content.channel_count()) {
    throw InvalidInputError("apply_adain: style stats have " +
                            std::to_string(style_means.size()) + "/" +
                            std::to_string(style_sigmas.size()) +
                            " channels, feature map has " +
                            std::to_string(content.channel_count()));
  }
  const auto stats = channel_stats(content);
  FeatureMap out;
  out.layer_index = content.layer_index;
  out.channels.reserve(content.channels.size());
  for (Index c = 0; c < content.channel_count(); ++c) {
    const double sigma_style = std::max(style_sigmas(c), 0.0);
    const double scale = sigma_style / stats.sigmas(c);
    const double shift = style_means(c) - scale * stats.means(c);
    out.channels.push_back(
        (content.channels[static_cast<std::size_t>(c)].array() * scale + shift)
            .matrix());
  }
  return out;
}

namespace {

bool rect_in_bounds(const ImageTensor& img, const Rect& r) {
  return r.y >= 0 && r.x >= 0 && r.y + r.h <= img.height() &&
         r.x + r.w <= img.width();
}

/// Pixel equality of the two rectangles' frames: every offset within radius
/// of the rectangle boundary (inside or outside) must match exactly between
/// the two sites. Offsets deeper than the radius (the core) are free to
/// differ; the swap moves them without any convolution response outside the
/// rectangles noticing.
bool frames_match(const ImageTensor& img, const Rect& a, const Rect& b,
                  Index radius) {
  for (Index oy = -radius; oy < a.h + radius; ++oy) {
    const bool core_y = oy >= radius && oy < a.h - radius;
    for (Index ox = -radius; ox < a.w + radius; ++ox) {
      if (core_y && ox >= radius && ox < a.w - radius) continue;
      for (const auto& plane : img.planes) {
        if (plane(a.y + oy, a.x + ox) != plane(b.y + oy, b.x + ox)) return false;
      }
    }
  }
  return true;
}

}  // namespace

InvarianceReport invariance_check(const ImageTensor& img, const Rect& rect_a,
                                  const Rect& rect_b, const ConvNetSpec& net,
                                  double tol) {
  net.validate();
  check_swap_rects(img, rect_a, rect_b);

  InvarianceReport report;
  report.receptive_radius = net.receptive_radius();
  report.tol = tol;

  const Index r = report.receptive_radius;
  const Rect grown_a{rect_a.y - r, rect_a.x - r, rect_a.h + 2 * r, rect_a.w + 2 * r};
  const Rect grown_b{rect_b.y - r, rect_b.x - r, rect_b.h + 2 * r, rect_b.w + 2 * r};
  report.homogeneous = rect_in_bounds(img, grown_a) &&
                       rect_in_bounds(img, grown_b) &&
                       !grown_a.intersects(rect_b) &&
                       !grown_b.intersects(rect_a) &&
                       frames_match(img, rect_a, rect_b, r);

  const ImageTensor swapped = swap_regions(img, rect_a, rect_b);
  const auto maps_orig = extract_features(img, net);
  const auto maps_swap = extract_features(swapped, net);

  report.layers.reserve(maps_orig.size());
  for (std::size_t l = 0; l < maps_orig.size(); ++l) {
    const auto stats_orig = channel_stats(maps_orig[l]);
    const auto stats_swap = channel_stats(maps_swap[l]);
    LayerDeviation dev;
    dev.layer_index = maps_orig[l].layer_index;
    dev.adain_dev = std::max(
        (stats_orig.means - stats_swap.means).cwiseAbs().maxCoeff(),
        (stats_orig.sigmas - stats_swap.sigmas).cwiseAbs().maxCoeff());
    dev.gram_dev = (gram_matrix(maps_orig[l]) - gram_matrix(maps_swap[l]))
                       .cwiseAbs()
                       .maxCoeff();
    report.max_adain_dev = std::max(report.max_adain_dev, dev.adain_dev);
    report.max_gram_dev = std::max(report.max_gram_dev, dev.gram_dev);
    report.layers.push_back(dev);
  }
  report.within_tol = report.max_adain_dev <= tol && report.max_gram_dev <= tol;
  return report;
}

}  // namespace stylestat
