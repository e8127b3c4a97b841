#include "stylestat/distance.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "stylestat/parallel.hpp"

namespace stylestat {

namespace {

void check_same_dim(const GaussianStyleModel& a, const GaussianStyleModel& b,
                    const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidDimensionError(std::string(op) + ": models have dimensions " +
                                std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
  }
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_csv_label(const std::string& label) {
  if (label.empty() || label.find_first_of(",\r\n") != std::string::npos) {
    throw DataError("label not representable in CSV: \"" + label + "\"");
  }
}

}  // namespace

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::W2: return "W2";
    case Metric::W2Squared: return "W2_SQUARED";
    case Metric::KL: return "KL";
    case Metric::Bhattacharyya: return "BHATTACHARYYA";
  }
  throw InvalidInputError("unknown metric id");
}

Metric metric_from_name(const std::string& name) {
  if (name == "W2") return Metric::W2;
  if (name == "W2_SQUARED") return Metric::W2Squared;
  if (name == "KL") return Metric::KL;
  if (name == "BHATTACHARYYA") return Metric::Bhattacharyya;
  throw FormatError("unknown metric name: " + name);
}

double w2_squared(const GaussianStyleModel& a, const GaussianStyleModel& b) {
  check_same_dim(a, b, "w2_squared");
  return wasserstein2_squared(a.mean, a.covariance, b.mean, b.covariance);
}

double w2(const GaussianStyleModel& a, const GaussianStyleModel& b) {
  return std::sqrt(w2_squared(a, b));
}

double kl_divergence(const GaussianStyleModel& a, const GaussianStyleModel& b) {
  check_same_dim(a, b, "kl_divergence");
  return gaussian_kl(a.mean, a.covariance, b.mean, b.covariance);
}

double bhattacharyya(const GaussianStyleModel& a, const GaussianStyleModel& b) {
  check_same_dim(a, b, "bhattacharyya");
  return gaussian_bhattacharyya(a.mean, a.covariance, b.mean, b.covariance);
}

double evaluate_metric(Metric metric, const GaussianStyleModel& a,
                       const GaussianStyleModel& b) {
  switch (metric) {
    case Metric::W2: return w2(a, b);
    case Metric::W2Squared: return w2_squared(a, b);
    case Metric::KL: return kl_divergence(a, b);
    case Metric::Bhattacharyya: return bhattacharyya(a, b);
  }
  throw InvalidInputError("unknown metric id");
}

DistanceMatrix distance_matrix(const std::vector<GaussianStyleModel>& models,
                               Metric metric, unsigned threads) {
  const Index n = static_cast<Index>(models.size());
  if (n < 2) {
    throw InvalidInputError("distance_matrix: need at least 2 models");
  }
  std::set<std::string> seen;
  for (const auto& m : models) {
    if (!seen.insert(m.label).second) {
      throw LabelCollisionError("distance_matrix: duplicate label \"" + m.label + "\"");
    }
    if (m.dim() != models.front().dim()) {
      throw InvalidDimensionError("distance_matrix: model \"" + m.label +
                                  "\" has dimension " + std::to_string(m.dim()) +
                                  ", expected " + std::to_string(models.front().dim()));
    }
  }

  DistanceMatrix out;
  out.metric = metric;
  out.labels.reserve(models.size());
  for (const auto& m : models) out.labels.push_back(m.label);
  out.values = MatrixXd::Zero(n, n);

  // Flatten the pair set so independent entries can be computed in parallel.
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < n; ++i) {
    for (Index j = metric_is_symmetric(metric) ? i + 1 : 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }

  auto compute_pair = [&](Index k) {
    const auto [i, j] = pairs[static_cast<std::size_t>(k)];
    try {
      out.values(i, j) = evaluate_metric(metric, models[i], models[j]);
    } catch (const NumericalError& e) {
      throw NumericalError("pair (" + models[i].label + ", " + models[j].label +
                           "): " + e.what());
    } catch (const DataError& e) {
      throw DataError("pair (" + models[i].label + ", " + models[j].label +
                      "): " + e.what());
    }
  };
  parallel_for(static_cast<Index>(pairs.size()), compute_pair, threads);

  if (metric_is_symmetric(metric)) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) out.values(j, i) = out.values(i, j);
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> nearest_neighbors(
    const DistanceMatrix& matrix, const std::string& label, Index k) {
  const Index n = matrix.size();
  const auto it = std::find(matrix.labels.begin(), matrix.labels.end(), label);
  if (it == matrix.labels.end()) {
    throw NotFoundError("nearest_neighbors: unknown label \"" + label + "\"");
  }
  if (k < 1 || k >= n) {
    throw InvalidInputError("nearest_neighbors: k must satisfy 1 <= k < " +
                            std::to_string(n));
  }
  const Index query = it - matrix.labels.begin();

  std::vector<std::pair<std::string, double>> candidates;
  candidates.reserve(static_cast<std::size_t>(n - 1));
  for (Index j = 0; j < n; ++j) {
    if (j != query) candidates.emplace_back(matrix.labels[j], matrix.values(query, j));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  candidates.resize(static_cast<std::size_t>(k));
  return candidates;
}

void write_distance_csv(const DistanceMatrix& matrix,
                        const std::filesystem::path& path) {
  for (const auto& label : matrix.labels) check_csv_label(label);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");

  out << "# metric=" << metric_name(matrix.metric) << "\n";
  for (const auto& label : matrix.labels) out << "," << label;
  out << "\n";
  for (Index i = 0; i < matrix.size(); ++i) {
    out << matrix.labels[i];
    for (Index j = 0; j < matrix.size(); ++j) {
      out << "," << format_value(matrix.values(i, j));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

DistanceMatrix read_distance_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string context = path.string();

  std::string line;
  if (!std::getline(in, line)) throw FormatError(context + ": empty file");
  if (line.rfind("# metric=", 0) != 0) {
    throw FormatError(context + ": missing \"# metric=\" comment line");
  }
  DistanceMatrix matrix;
  matrix.metric = metric_from_name(line.substr(9));

  if (!std::getline(in, line)) throw FormatError(context + ": missing header row");
  std::stringstream header(line);
  std::string cell;
  if (!std::getline(header, cell, ',') || !cell.empty()) {
    throw FormatError(context + ": header row must start with an empty cell");
  }
  while (std::getline(header, cell, ',')) {
    if (cell.empty()) throw FormatError(context + ": empty label in header");
    matrix.labels.push_back(cell);
  }
  const Index n = static_cast<Index>(matrix.labels.size());
  if (n < 1) throw FormatError(context + ": no labels in header");

  matrix.values.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw FormatError(context + ": missing data row");
    std::stringstream row(line);
    if (!std::getline(row, cell, ',') || cell != matrix.labels[i]) {
      throw FormatError(context + ": row label does not match header order");
    }
    for (Index j = 0; j < n; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw FormatError(context + ": short data row");
      }
      char* end = nullptr;
      matrix.values(i, j) = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw FormatError(context + ": bad numeric cell \"" + cell + "\"");
      }
    }
    if (std::getline(row, cell, ',')) {
      throw FormatError(context + ": extra cells in data row");
    }
  }
  return matrix;
}

}  // namespace stylestat
