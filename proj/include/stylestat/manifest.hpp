#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stylestat/errors.hpp"

namespace stylestat {

struct ManifestRow {
  std::string path;
  std::string label;
  std::size_t line = 0;  // 1-based line number in the manifest file
};

/// Image corpus listing: CSV with a `path,label` header, optionally preceded
/// by a `# group=<artist|style|genre>` comment. Every label must appear on
/// at least two rows (a Gaussian fit needs n >= 2).
struct DatasetManifest {
  std::vector<ManifestRow> rows;
  std::string group;  // empty when untagged

  /// Labels in first-appearance order.
  std::vector<std::string> labels() const;
};

DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace stylestat
