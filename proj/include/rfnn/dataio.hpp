#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rfnn/linalg.hpp"
#include "rfnn/normalization.hpp"
#include "rfnn/rng.hpp"

namespace rfnn {

/// Inputs X (N x n) and targets Y (N).
struct Dataset {
  Matrix x;
  Vector y;
  std::vector<std::string> feature_names;
  std::string target_name;

  std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(x.cols()); }

  /// Throws InvalidInputError unless N >= 1, shapes agree and every value is
  /// finite.
  void validate() const;

  /// Rows `rows` in the given order.
  Dataset subset(const std::vector<std::size_t>& rows) const;
};

struct CsvOptions {
  /// Field separator. ' ' splits on any run of spaces or tabs.
  char delimiter = ',';
  bool header = false;
  /// Zero-based target column; the last column when empty.
  std::optional<std::size_t> target_column;
};

/// Reads a numeric table. Lines starting with '@' (KEEL .dat headers) and
/// blank lines are skipped; names from KEEL `@attribute` lines are kept.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Same, from an in-memory string.
Dataset parse_csv(const std::string& text, const CsvOptions& options = {});

/// Random partition with round(0.75 N) training rows (half rounds up).
/// Rows keep their original relative order inside each part.
std::pair<Dataset, Dataset> split_75_25(const Dataset& ds, const RngStream& rng);

/// Fits [0, 1] min-max maps on `ds` (inputs and target) and applies them,
/// or applies `spec` unchanged when given.
std::pair<Dataset, NormalizationSpec> normalize(
    const Dataset& ds, const std::optional<NormalizationSpec>& spec = std::nullopt);

/// {"name", "N", "n", "columns": [{"name", "min", "max"}...], "target": {...}}
nlohmann::json dataset_summary(const Dataset& ds, const std::string& name);

/// Header x1..xn,y and one row per sample, reals in 17 significant digits.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

}  // namespace rfnn
