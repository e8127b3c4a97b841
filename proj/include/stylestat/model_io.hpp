#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "stylestat/common.hpp"
#include "stylestat/model.hpp"

namespace stylestat {

// USTM model file, little-endian:
//   magic "USTM" | version u32=1 | label_len u32 | label bytes
//   | dim u64 | n u64 | mean dim*f64 | covariance dim*dim*f64 row-major
std::vector<std::uint8_t> model_to_bytes(const GaussianStyleModel& model);
GaussianStyleModel model_from_bytes(const std::vector<std::uint8_t>& bytes,
                                    const std::string& context);

void save_model(const GaussianStyleModel& model, const std::filesystem::path& path);
GaussianStyleModel load_model(const std::filesystem::path& path);

// USTV vector batch file, little-endian:
//   magic "USTV" | version u32=1 | dim u64 | count u64
//   | count*dim f64 row-major (one vector per row)
std::vector<std::uint8_t> vector_batch_to_bytes(const Eigen::Ref<const MatrixXd>& vectors);
MatrixXd vector_batch_from_bytes(const std::vector<std::uint8_t>& bytes,
                                 const std::string& context);

void save_vector_batch(const Eigen::Ref<const MatrixXd>& vectors,
                       const std::filesystem::path& path);
MatrixXd load_vector_batch(const std::filesystem::path& path);

}  // namespace stylestat
