#include "stylestat/model_io.hpp"

#include <limits>

#include "stylestat/io_util.hpp"
#include "stylestat/psd.hpp"

namespace stylestat {

namespace {

constexpr std::uint32_t kFormatVersion = 1;

// Largest dimension the binary formats will declare or accept. Keeps
// dim * dim * 8 far away from u64 overflow and rejects absurd headers
// before any allocation is attempted.
constexpr std::uint64_t kMaxDim = 1u << 20;
constexpr std::uint64_t kMaxCount = 1ull << 40;

std::uint64_t checked_payload(std::uint64_t rows, std::uint64_t cols,
                              const std::string& context) {
  if (rows > kMaxCount || cols > kMaxDim) {
    throw FormatError(context + ": declared size out of range");
  }
  const std::uint64_t cells = rows * cols;
  if (cols != 0 && cells / cols != rows) {
    throw FormatError(context + ": declared sizes overflow");
  }
  if (cells > std::numeric_limits<std::uint64_t>::max() / 8) {
    throw FormatError(context + ": declared sizes overflow");
  }
  return cells;
}

}  // namespace

std::vector<std::uint8_t> model_to_bytes(const GaussianStyleModel& model) {
  ByteWriter w;
  w.magic("USTM");
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(model.label.size()));
  w.bytes(model.label.data(), model.label.size());
  const Index dim = model.dim();
  w.u64(static_cast<std::uint64_t>(dim));
  w.u64(model.n);
  for (Index i = 0; i < dim; ++i) w.f64(model.mean(i));
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) w.f64(model.covariance(i, j));
  }
  return w.data();
}

GaussianStyleModel model_from_bytes(const std::vector<std::uint8_t>& bytes,
                                    const std::string& context) {
  ByteReader r(bytes, context);
  r.expect_magic("USTM");
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw FormatError(context + ": unsupported version " + std::to_string(version));
  }
  const std::uint32_t label_len = r.u32();
  GaussianStyleModel model;
  model.label = r.str(label_len);
  const std::uint64_t dim = r.u64();
  if (dim < 1) throw FormatError(context + ": dim must be >= 1");
  model.n = r.u64();
  if (model.n < 2) throw FormatError(context + ": observation count must be >= 2");
  const std::uint64_t cov_cells = checked_payload(dim, dim, context);
  if (r.remaining() != (dim + cov_cells) * 8) {
    throw FormatError(context + ": payload size does not match declared sizes");
  }

  const Index d = static_cast<Index>(dim);
  model.mean.resize(d);
  for (Index i = 0; i < d; ++i) model.mean(i) = r.f64();
  model.covariance.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) model.covariance(i, j) = r.f64();
  }
  r.expect_exhausted();

  if (!model.mean.allFinite() || !model.covariance.allFinite()) {
    throw FormatError(context + ": non-finite values in payload");
  }
  if (!is_symmetric(model.covariance)) {
    throw FormatError(context + ": covariance violates symmetry tolerance");
  }
  return model;
}

void save_model(const GaussianStyleModel& model, const std::filesystem::path& path) {
  write_file(path, model_to_bytes(model));
}

GaussianStyleModel load_model(const std::filesystem::path& path) {
  return model_from_bytes(read_file(path), path.string());
}

std::vector<std::uint8_t> vector_batch_to_bytes(
    const Eigen::Ref<const MatrixXd>& vectors) {
  ByteWriter w;
  w.magic("USTV");
  w.u32(kFormatVersion);
  w.u64(static_cast<std::uint64_t>(vectors.cols()));
  w.u64(static_cast<std::uint64_t>(vectors.rows()));
  for (Index i = 0; i < vectors.rows(); ++i) {
    for (Index j = 0; j < vectors.cols(); ++j) w.f64(vectors(i, j));
  }
  return w.data();
}

MatrixXd vector_batch_from_bytes(const std::vector<std::uint8_t>& bytes,
                                 const std::string& context) {
  ByteReader r(bytes, context);
  r.expect_magic("USTV");
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw FormatError(context + ": unsupported version " + std::to_string(version));
  }
  const std::uint64_t dim = r.u64();
  const std::uint64_t count = r.u64();
  if (dim < 1) throw FormatError(context + ": dim must be >= 1");
  const std::uint64_t cells = checked_payload(count, dim, context);
  if (r.remaining() != cells * 8) {
    throw FormatError(context + ": payload size does not match declared count*dim");
  }
  MatrixXd vectors(static_cast<Index>(count), static_cast<Index>(dim));
  for (Index i = 0; i < vectors.rows(); ++i) {
    for (Index j = 0; j < vectors.cols(); ++j) vectors(i, j) = r.f64();
  }
  r.expect_exhausted();
  if (!vectors.allFinite()) {
    throw FormatError(context + ": non-finite values in payload");
  }
  return vectors;
}

void save_vector_batch(const Eigen::Ref<const MatrixXd>& vectors,
                       const std::filesystem::path& path) {
  write_file(path, vector_batch_to_bytes(vectors));
}

MatrixXd load_vector_batch(const std::filesystem::path& path) {
  return vector_batch_from_bytes(read_file(path), path.string());
}

}  // namespace stylestat
