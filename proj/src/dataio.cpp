#include "rfnn/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ') {
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto start = line.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      auto end = line.find_first_of(" \t", start);
      if (end == std::string_view::npos) end = line.size();
      fields.push_back(line.substr(start, end - start));
      pos = end;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, end == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

bool parse_double(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string keel_attribute_name(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tag, name;
  in >> tag >> name;
  return name;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

}  // namespace

void Dataset::validate() const {
  if (x.rows() < 1 || x.cols() < 1) throw InvalidInputError("dataset is empty");
  if (x.rows() != y.size()) {
    throw InvalidInputError("dataset inputs and targets differ in length");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw InvalidInputError("dataset contains non-finite values");
  }
}

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = static_cast<Eigen::Index>(rows[r]);
    out.x.row(static_cast<Eigen::Index>(r)) = x.row(src);
    out.y[static_cast<Eigen::Index>(r)] = y[src];
  }
  out.feature_names = feature_names;
  out.target_name = target_name;
  return out;
}

Dataset parse_csv(const std::string& text, const CsvOptions& options) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  bool header_pending = options.header;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '@') {
      if (starts_with_ci(line, "@attribute")) names.push_back(keel_attribute_name(line));
      continue;
    }
    const auto fields = split_fields(line, options.delimiter);
    if (header_pending) {
      names.assign(fields.begin(), fields.end());
      width = fields.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw FormatError("ragged row at line " + std::to_string(line_no) +
                        ": expected " + std::to_string(width) + " fields, got " +
                        std::to_string(fields.size()));
    }
    std::vector<double> values(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], values[c])) {
        throw ParseError("non-numeric cell '" + std::string(fields[c]) + "'",
                         line_no, c + 1);
      }
    }
    rows.push_back(std::move(values));
  }

  if (rows.empty()) throw FormatError("no data rows");
  if (width < 2) throw FormatError("need at least one input and one target column");
  const std::size_t target = options.target_column.value_or(width - 1);
  if (target >= width) {
    throw InvalidInputError("target column " + std::to_string(target) +
                            " out of range for " + std::to_string(width) +
                            " columns");
  }

  Dataset ds;
  ds.x.resize(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(width - 1));
  ds.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == target) {
        ds.y[static_cast<Eigen::Index>(r)] = rows[r][c];
      } else {
        ds.x(static_cast<Eigen::Index>(r), col++) = rows[r][c];
      }
    }
  }
  if (names.size() == width) {
    for (std::size_t c = 0; c < width; ++c) {
      if (c == target) {
        ds.target_name = names[c];
      } else {
        ds.feature_names.push_back(names[c]);
      }
    }
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), options);
}

std::pair<Dataset, Dataset> split_75_25(const Dataset& ds, const RngStream& rng) {
  const std::size_t n = ds.size();
  if (n < 4) throw InvalidInputError("split_75_25 needs at least 4 samples");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  RngStream s = rng;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[s.index(i + 1)]);

  // round-half-up of 0.75 N, in exact integer arithmetic
  const std::size_t n_train = (3 * n + 2) / 4;
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {ds.subset(train), ds.subset(test)};
}

std::pair<Dataset, NormalizationSpec> normalize(
    const Dataset& ds, const std::optional<NormalizationSpec>& spec) {
  const NormalizationSpec used =
      spec ? *spec : fit_normalization(ds.x, ds.y, {0.0, 1.0}, {0.0, 1.0});
  Dataset out = ds;
  out.x = used.apply_inputs(ds.x);
  out.y = used.apply_output(ds.y);
  return {std::move(out), used};
}

nlohmann::json dataset_summary(const Dataset& ds, const std::string& name) {
  nlohmann::json columns = nlohmann::json::array();
  for (Eigen::Index j = 0; j < ds.x.cols(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    columns.push_back({{"name", jj < ds.feature_names.size()
                                    ? ds.feature_names[jj]
                                    : "x" + std::to_string(jj + 1)},
                       {"min", ds.x.col(j).minCoeff()},
                       {"max", ds.x.col(j).maxCoeff()}});
  }
  return {{"name", name},
          {"N", ds.size()},
          {"n", ds.input_dim()},
          {"columns", columns},
          {"target",
           {{"name", ds.target_name.empty() ? "y" : ds.target_name},
            {"min", ds.y.minCoeff()},
            {"max", ds.y.maxCoeff()}}}};
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < ds.x.cols(); ++j) out << 'x' << (j + 1) << ',';
  out << "y\n";
  for (Eigen::Index l = 0; l < ds.x.rows(); ++l) {
    for (Eigen::Index j = 0; j < ds.x.cols(); ++j) out << ds.x(l, j) << ',';
    out << ds.y[l] << '\n';
  }
}

}  // namespace rfnn
