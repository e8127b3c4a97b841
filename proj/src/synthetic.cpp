#include "stylestat/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "stylestat/errors.hpp"
#include "stylestat/rng.hpp"

namespace stylestat {

ImageTensor make_texture_image(Index height, Index width, double base_r,
                               double base_g, double base_b, double amplitude,
                               std::uint64_t seed) {
  ImageTensor img = ImageTensor::zeros(height, width, 3);
  const double base[3] = {base_r, base_g, base_b};
  SequentialRng rng(seed);
  for (Index y = 0; y < height; ++y) {
    for (Index x = 0; x < width; ++x) {
      for (Index c = 0; c < 3; ++c) {
        const double noise = amplitude * (rng.next_uniform01() - 0.5);
        img.planes[static_cast<std::size_t>(c)](y, x) =
            std::clamp(base[c] + noise, 0.0, 1.0);
      }
    }
  }
  return img;
}

std::filesystem::path write_demo_corpus(const std::filesystem::path& dir,
                                        std::uint64_t seed) {
  struct LabelSpec {
    const char* name;
    double r, g, b, amplitude;
  };
  // Two warm labels near each other in color space and one cool,
  // high-contrast outlier, so distance orderings have something to find.
  const LabelSpec labels[] = {
      {"brick", 0.60, 0.30, 0.22, 0.20},
      {"clay", 0.55, 0.34, 0.24, 0.22},
      {"slate", 0.25, 0.35, 0.60, 0.55},
  };
  constexpr Index kImagesPerLabel = 8;
  constexpr Index kSide = 16;

  std::filesystem::create_directories(dir);
  const auto manifest_path = dir / "manifest.csv";
  std::ofstream manifest(manifest_path, std::ios::binary | std::ios::trunc);
  if (!manifest) {
    throw IoError("cannot open " + manifest_path.string() + " for writing");
  }
  manifest << "# group=style\n";
  manifest << "path,label\n";

  std::uint64_t image_index = 0;
  for (const auto& label : labels) {
    for (Index i = 0; i < kImagesPerLabel; ++i) {
      const ImageTensor img =
          make_texture_image(kSide, kSide, label.r, label.g, label.b,
                             label.amplitude, mix64(seed) + image_index);
      ++image_index;
      const std::string name =
          std::string(label.name) + "_" + std::to_string(i) + ".ppm";
      save_ppm(img, dir / name);
      manifest << name << "," << label.name << "\n";
    }
  }
  if (!manifest) throw IoError("write failed for " + manifest_path.string());
  return manifest_path;
}

SwapFixture make_swap_fixture(std::uint64_t seed) {
  SwapFixture fx;
  fx.image = ImageTensor::zeros(64, 64, 3);
  for (auto& plane : fx.image.planes) plane.setConstant(0.5);
  fx.rect_a = Rect{12, 12, 8, 8};
  fx.rect_b = Rect{40, 40, 8, 8};

  const ImageTensor patch = make_texture_image(8, 8, 0.4, 0.5, 0.6, 0.7, seed);
  for (Index c = 0; c < 3; ++c) {
    auto& plane = fx.image.planes[static_cast<std::size_t>(c)];
    const auto& src = patch.planes[static_cast<std::size_t>(c)];
    plane.block(fx.rect_a.y, fx.rect_a.x, 8, 8) = src;
    plane.block(fx.rect_b.y, fx.rect_b.x, 8, 8) = src;
  }
  return fx;
}

}  // namespace stylestat
