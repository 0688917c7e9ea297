// table.hpp: labelled result tables with CSV and JSON serialization

#pragma once

#include "wqed/lindblad.hpp"
#include "wqed/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace wqed {

/// Column-oriented table of real values with an optional per-row error tag.
/// Metadata is free-form JSON (spec, tolerances, timestamp, version).
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> column_names);

  const std::vector<std::string>& column_names() const { return names_; }
  std::size_t rows() const { return errors_.size(); }
  std::size_t cols() const { return names_.size(); }

  /// Throws std::invalid_argument on width mismatch.
  void append_row(const std::vector<double>& values, std::string error = {});
  /// Throws std::invalid_argument for unknown names.
  const std::vector<double>& column(const std::string& name) const;
  double at(std::size_t row, const std::string& name) const { return column(name).at(row); }
  const std::string& error(std::size_t row) const { return errors_.at(row); }
  bool has_errors() const;

  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  /// RFC-4180 CSV; an "error" column is appended when any row carries a tag.
  /// Values are printed in shortest round-trip form.
  std::string to_csv() const;
  /// {"columns": [...], "data": {name: [...]}, "errors": [...], "metadata": {...}};
  /// non-finite values become null.
  nlohmann::json to_json() const;

  void write_csv(const std::filesystem::path& path) const;
  void write_json(const std::filesystem::path& path) const;

  /// Equality of names, values (NaN equal to NaN) and error tags; metadata ignored.
  bool same_data(const ResultTable& other) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> errors_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

/// Field quoted per RFC 4180 when it holds a comma, quote or line break.
std::string csv_escape(const std::string& field);
std::string format_number(double value);

void to_json(nlohmann::json& j, const ChainSpec& spec);
void to_json(nlohmann::json& j, const SolverOptions& options);

/// {"version", "timestamp"} for table metadata.
nlohmann::json provenance();

}  // namespace wqed
