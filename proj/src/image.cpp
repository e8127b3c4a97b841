#include "stylestat/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

#include "stylestat/io_util.hpp"

namespace stylestat {

namespace {

constexpr std::uint32_t kUstiVersion = 1;
constexpr std::uint64_t kMaxSide = 1u << 20;
constexpr std::uint64_t kMaxChannels = 1u << 16;

void check_image(const ImageTensor& img, const std::string& context) {
  if (img.channels() < 1 || img.height() < 1 || img.width() < 1) {
    throw InvalidInputError(context + ": empty image");
  }
  for (const auto& plane : img.planes) {
    if (plane.rows() != img.height() || plane.cols() != img.width()) {
      throw InvalidInputError(context + ": ragged channel planes");
    }
    if (!plane.allFinite() || plane.minCoeff() < 0.0 || plane.maxCoeff() > 1.0) {
      throw InvalidInputError(context + ": values must be finite and in [0, 1]");
    }
  }
}

// PPM headers allow '#' comments between tokens.
int next_ppm_token(std::istream& in, std::string& token) {
  token.clear();
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  return c;
}

std::uint64_t parse_ppm_int(const std::string& token, const std::string& context) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError(context + ": bad PPM header token \"" + token + "\"");
  }
  return std::stoull(token);
}

}  // namespace

void check_swap_rects(const ImageTensor& img, const Rect& a, const Rect& b) {
  check_image(img, "swap_regions");
  for (const Rect& r : {a, b}) {
    if (r.h < 1 || r.w < 1) {
      throw InvalidRegionError("swap_regions: rectangle is empty");
    }
    if (r.y < 0 || r.x < 0 || r.y + r.h > img.height() || r.x + r.w > img.width()) {
      throw InvalidRegionError("swap_regions: rectangle out of bounds");
    }
  }
  if (a.h != b.h || a.w != b.w) {
    throw InvalidRegionError("swap_regions: rectangles differ in size");
  }
  if (a.intersects(b)) {
    throw InvalidRegionError("swap_regions: rectangles overlap");
  }
}

ImageTensor swap_regions(const ImageTensor& img, const Rect& a, const Rect& b) {
  check_swap_rects(img, a, b);
  ImageTensor out = img;
  for (auto& plane : out.planes) {
    const MatrixXd block_a = plane.block(a.y, a.x, a.h, a.w);
    plane.block(a.y, a.x, a.h, a.w) = plane.block(b.y, b.x, b.h, b.w);
    plane.block(b.y, b.x, b.h, b.w) = block_a;
  }
  return out;
}

ImageTensor center_crop_resize(const ImageTensor& img, Index side) {
  check_image(img, "center_crop_resize");
  if (side < 1) throw InvalidInputError("center_crop_resize: side must be >= 1");

  const Index crop = std::min(img.height(), img.width());
  const Index y0 = (img.height() - crop) / 2;
  const Index x0 = (img.width() - crop) / 2;

  ImageTensor out = ImageTensor::zeros(side, side, img.channels());
  const double scale = static_cast<double>(crop) / static_cast<double>(side);
  for (Index c = 0; c < img.channels(); ++c) {
    const auto& src = img.planes[static_cast<std::size_t>(c)];
    auto& dst = out.planes[static_cast<std::size_t>(c)];
    for (Index oy = 0; oy < side; ++oy) {
      const double ylo = static_cast<double>(oy) * scale;
      const double yhi = static_cast<double>(oy + 1) * scale;
      for (Index ox = 0; ox < side; ++ox) {
        const double xlo = static_cast<double>(ox) * scale;
        const double xhi = static_cast<double>(ox + 1) * scale;
        // Exact overlap integral of the output cell against the input grid.
        double acc = 0.0;
        const Index iy0 = static_cast<Index>(std::floor(ylo));
        const Index iy1 = std::min(static_cast<Index>(std::ceil(yhi)), crop);
        const Index ix0 = static_cast<Index>(std::floor(xlo));
        const Index ix1 = std::min(static_cast<Index>(std::ceil(xhi)), crop);
        for (Index iy = iy0; iy < iy1; ++iy) {
          const double wy = std::min(yhi, static_cast<double>(iy + 1)) -
                            std::max(ylo, static_cast<double>(iy));
          if (wy <= 0.0) continue;
          for (Index ix = ix0; ix < ix1; ++ix) {
            const double wx = std::min(xhi, static_cast<double>(ix + 1)) -
                              std::max(xlo, static_cast<double>(ix));
            if (wx <= 0.0) continue;
            acc += wy * wx * src(y0 + iy, x0 + ix);
          }
        }
        dst(oy, ox) = std::clamp(acc / (scale * scale), 0.0, 1.0);
      }
    }
  }
  return out;
}

ImageTensor load_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path.string());
  char head[4] = {0, 0, 0, 0};
  probe.read(head, 4);
  probe.close();
  if (head[0] == 'P' && head[1] == '6') return load_ppm(path);
  if (std::string(head, 4) == "USTI") return load_usti(path);
  throw FormatError(path.string() + ": not a PPM (P6) or USTI image");
}

ImageTensor load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string context = path.string();

  std::string token;
  next_ppm_token(in, token);
  if (token != "P6") throw FormatError(context + ": not a binary PPM (P6)");
  next_ppm_token(in, token);
  const std::uint64_t width = parse_ppm_int(token, context);
  next_ppm_token(in, token);
  const std::uint64_t height = parse_ppm_int(token, context);
  const int sep = next_ppm_token(in, token);
  const std::uint64_t maxval = parse_ppm_int(token, context);
  if (maxval != 255) {
    throw FormatError(context + ": only 8-bit PPM (maxval 255) is supported");
  }
  if (sep == EOF) throw FormatError(context + ": truncated header");
  if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide) {
    throw FormatError(context + ": bad dimensions");
  }

  const std::size_t payload = static_cast<std::size_t>(width) * height * 3;
  std::vector<std::uint8_t> raw(payload);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(payload));
  if (static_cast<std::size_t>(in.gcount()) != payload) {
    throw FormatError(context + ": truncated pixel data");
  }

  ImageTensor img = ImageTensor::zeros(static_cast<Index>(height),
                                       static_cast<Index>(width), 3);
  std::size_t pos = 0;
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      for (Index c = 0; c < 3; ++c) {
        img.planes[static_cast<std::size_t>(c)](y, x) = raw[pos++] / 255.0;
      }
    }
  }
  return img;
}

void save_ppm(const ImageTensor& img, const std::filesystem::path& path) {
  check_image(img, "save_ppm");
  if (img.channels() != 3) {
    throw InvalidInputError("save_ppm: PPM requires exactly 3 channels");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      for (Index c = 0; c < 3; ++c) {
        const double v = img.planes[static_cast<std::size_t>(c)](y, x);
        const int q = static_cast<int>(std::lround(v * 255.0));
        out.put(static_cast<char>(std::clamp(q, 0, 255)));
      }
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

ImageTensor load_usti(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  ByteReader r(bytes, path.string());
  r.expect_magic("USTI");
  const std::uint32_t version = r.u32();
  if (version != kUstiVersion) {
    throw FormatError(path.string() + ": unsupported version " +
                      std::to_string(version));
  }
  const std::uint64_t height = r.u64();
  const std::uint64_t width = r.u64();
  const std::uint64_t channels = r.u64();
  if (height < 1 || width < 1 || channels < 1 || height > kMaxSide ||
      width > kMaxSide || channels > kMaxChannels) {
    throw FormatError(path.string() + ": bad dimensions");
  }
  const std::uint64_t cells = height * width * channels;
  if (r.remaining() != cells * 4) {
    throw FormatError(path.string() + ": payload size does not match header");
  }

  ImageTensor img = ImageTensor::zeros(static_cast<Index>(height),
                                       static_cast<Index>(width),
                                       static_cast<Index>(channels));
  for (auto& plane : img.planes) {
    for (Index y = 0; y < plane.rows(); ++y) {
      for (Index x = 0; x < plane.cols(); ++x) {
        plane(y, x) = static_cast<double>(r.f32());
      }
    }
  }
  check_image(img, path.string());
  return img;
}

void save_usti(const ImageTensor& img, const std::filesystem::path& path) {
  check_image(img, "save_usti");
  ByteWriter w;
  w.magic("USTI");
  w.u32(kUstiVersion);
  w.u64(static_cast<std::uint64_t>(img.height()));
  w.u64(static_cast<std::uint64_t>(img.width()));
  w.u64(static_cast<std::uint64_t>(img.channels()));
  for (const auto& plane : img.planes) {
    for (Index y = 0; y < plane.rows(); ++y) {
      for (Index x = 0; x < plane.cols(); ++x) {
        const auto bits = std::bit_cast<std::uint32_t>(
            static_cast<float>(plane(y, x)));
        std::uint8_t le[4];
        for (int i = 0; i < 4; ++i) le[i] = static_cast<std::uint8_t>(bits >> (8 * i));
        w.bytes(le, 4);
      }
    }
  }
  write_file(path, w.data());
}

}  // namespace stylestat
