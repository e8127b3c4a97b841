#include "stylestat/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace stylestat {

std::vector<std::string> DatasetManifest::labels() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (std::find(out.begin(), out.end(), row.label) == out.end()) {
      out.push_back(row.label);
    }
  }
  return out;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const std::string context = path.string();

  DatasetManifest manifest;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string group_prefix = "# group=";
      if (line.rfind(group_prefix, 0) == 0) {
        manifest.group = line.substr(group_prefix.size());
        if (manifest.group != "artist" && manifest.group != "style" &&
            manifest.group != "genre") {
          throw FormatError(context + " line " + std::to_string(line_no) +
                            ": group must be artist, style, or genre");
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != "path,label") {
        throw FormatError(context + " line " + std::to_string(line_no) +
                          ": expected header \"path,label\"");
      }
      header_seen = true;
      continue;
    }

    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw FormatError(context + " line " + std::to_string(line_no) +
                        ": expected exactly two comma-separated fields");
    }
    ManifestRow row;
    row.path = line.substr(0, comma);
    row.label = line.substr(comma + 1);
    row.line = line_no;
    if (row.path.empty()) {
      throw DataError(context + " line " + std::to_string(line_no) + ": empty path");
    }
    if (row.label.empty()) {
      throw DataError(context + " line " + std::to_string(line_no) + ": empty label");
    }
    manifest.rows.push_back(std::move(row));
  }
  if (!header_seen) throw FormatError(context + ": missing \"path,label\" header");
  if (manifest.rows.empty()) throw DataError(context + ": no data rows");

  std::map<std::string, std::size_t> counts;
  for (const auto& row : manifest.rows) ++counts[row.label];
  for (const auto& [label, count] : counts) {
    if (count < 2) {
      throw DataError(context + ": label \"" + label + "\" has " +
                      std::to_string(count) + " image(s); fitting needs >= 2");
    }
  }
  return manifest;
}

}  // namespace stylestat
