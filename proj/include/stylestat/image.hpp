#pragma once

#include <filesystem>
#include <vector>

#include "stylestat/common.hpp"
#include "stylestat/errors.hpp"

namespace stylestat {

/// Spatial multi-channel image, one H x W plane per channel, values in [0, 1].
struct ImageTensor {
  std::vector<MatrixXd> planes;

  Index height() const { return planes.empty() ? 0 : planes.front().rows(); }
  Index width() const { return planes.empty() ? 0 : planes.front().cols(); }
  Index channels() const { return static_cast<Index>(planes.size()); }

  static ImageTensor zeros(Index height, Index width, Index channels) {
    ImageTensor img;
    img.planes.assign(static_cast<std::size_t>(channels),
                      MatrixXd::Zero(height, width));
    return img;
  }
};

/// Axis-aligned pixel rectangle: top-left corner (y, x), extent (h, w).
struct Rect {
  Index y = 0;
  Index x = 0;
  Index h = 0;
  Index w = 0;

  bool contains(Index py, Index px) const {
    return py >= y && py < y + h && px >= x && px < x + w;
  }

  bool intersects(const Rect& other) const {
    return y < other.y + other.h && other.y < y + h && x < other.x + other.w &&
           other.x < x + w;
  }
};

/// Validate a swap pair: same size, inside the image, disjoint.
void check_swap_rects(const ImageTensor& img, const Rect& a, const Rect& b);

/// Exchange the pixel content of two equal-size disjoint rectangles.
ImageTensor swap_regions(const ImageTensor& img, const Rect& a, const Rect& b);

/// Center-crop to the largest square, then resize to side x side by exact
/// area averaging (no interpolation kernels, bit-deterministic).
ImageTensor center_crop_resize(const ImageTensor& img, Index side);

// Image files. PPM is binary P6 with maxval 255; USTI is the raw planar
// float32 format: magic "USTI" | version u32=1 | height u64 | width u64
// | channels u64 | float32 planar values, little-endian.
ImageTensor load_image(const std::filesystem::path& path);
ImageTensor load_ppm(const std::filesystem::path& path);
ImageTensor load_usti(const std::filesystem::path& path);
void save_ppm(const ImageTensor& img, const std::filesystem::path& path);
void save_usti(const ImageTensor& img, const std::filesystem::path& path);

}  // namespace stylestat
