#pragma once

#include <cstdint>
#include <filesystem>

#include "stylestat/image.hpp"

namespace stylestat {

/// Deterministic noise texture: per-channel base color plus uniform noise of
/// the given amplitude, clamped to [0, 1]. Same (seed, shape) -> same pixels.
ImageTensor make_texture_image(Index height, Index width, double base_r,
                               double base_g, double base_b, double amplitude,
                               std::uint64_t seed);

/// Write a small synthetic corpus (3 labels x 8 images of 16x16 RGB noise
/// textures) plus a `manifest.csv` into `dir`. Returns the manifest path.
/// Everything is derived from `seed`, so two invocations produce
/// byte-identical files.
std::filesystem::path write_demo_corpus(const std::filesystem::path& dir,
                                        std::uint64_t seed = 7);

/// Region-swap fixture: a 64x64 gray image carrying two identical 8x8
/// texture patches whose surroundings are constant well past any small
/// receptive field.
struct SwapFixture {
  ImageTensor image;
  Rect rect_a;
  Rect rect_b;
};

SwapFixture make_swap_fixture(std::uint64_t seed = 11);

}  // namespace stylestat
