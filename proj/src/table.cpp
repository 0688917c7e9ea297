#include "wqed/table.hpp"

#include "wqed/plot.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef WQED_VERSION
#define WQED_VERSION "unknown"
#endif

namespace wqed {

ResultTable::ResultTable(std::vector<std::string> column_names) : names_(std::move(column_names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw std::invalid_argument("ResultTable: duplicate column " + names_[i]);
    }
  }
  columns_.resize(names_.size());
}

void ResultTable::append_row(const std::vector<double>& values, std::string error) {
  if (values.size() != names_.size()) {
    throw std::invalid_argument("ResultTable: row has " + std::to_string(values.size()) + " values, expected " +
                                std::to_string(names_.size()));
  }
  for (std::size_t c = 0; c < values.size(); ++c) columns_[c].push_back(values[c]);
  errors_.push_back(std::move(error));
}

const std::vector<double>& ResultTable::column(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("ResultTable: no column " + name);
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

bool ResultTable::has_errors() const {
  return std::any_of(errors_.begin(), errors_.end(), [](const std::string& e) { return !e.empty(); });
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string ResultTable::to_csv() const {
  const bool tagged = has_errors();
  std::ostringstream out;
  for (std::size_t c = 0; c < names_.size(); ++c) out << (c ? "," : "") << csv_escape(names_[c]);
  if (tagged) out << (names_.empty() ? "" : ",") << "error";
  out << "\r\n";
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < names_.size(); ++c) out << (c ? "," : "") << format_number(columns_[c][r]);
    if (tagged) out << (names_.empty() ? "" : ",") << csv_escape(errors_[r]);
    out << "\r\n";
  }
  return out.str();
}

nlohmann::json ResultTable::to_json() const {
  nlohmann::json data = nlohmann::json::object();
  for (std::size_t c = 0; c < names_.size(); ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (double v : columns_[c]) col.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
    data[names_[c]] = std::move(col);
  }
  return {{"columns", names_}, {"data", std::move(data)}, {"errors", errors_}, {"metadata", metadata_}};
}

void ResultTable::write_csv(const std::filesystem::path& path) const { write_text_file(path, to_csv()); }

void ResultTable::write_json(const std::filesystem::path& path) const { write_text_file(path, to_json().dump(2) + "\n"); }

bool ResultTable::same_data(const ResultTable& other) const {
  if (names_ != other.names_ || errors_ != other.errors_) return false;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    for (std::size_t r = 0; r < columns_[c].size(); ++r) {
      const double a = columns_[c][r], b = other.columns_[c][r];
      if (!(a == b) && !(std::isnan(a) && std::isnan(b))) return false;
    }
  }
  return true;
}

void to_json(nlohmann::json& j, const ChainSpec& spec) {
  j = {{"n", spec.n},
       {"gamma", spec.gamma},
       {"eta", spec.eta},
       {"eta2", spec.eta2()},
       {"omega_a", spec.omega_a},
       {"omega_b", spec.omega_b},
       {"delta", spec.delta},
       {"j", spec.hopping}};
  if (spec.t1) j["t1"] = *spec.t1;
  if (!spec.t1_override.empty()) j["t1_override"] = spec.t1_override;
}

void to_json(nlohmann::json& j, const SolverOptions& options) {
  const char* mode = "none";
  if (options.uniqueness == UniquenessCheck::SingularValues) mode = "singular_values";
  if (options.uniqueness == UniquenessCheck::ConditionEstimate) mode = "condition_estimate";
  j = {{"tol", options.tol},
       {"uniqueness", mode},
       {"uniqueness_ratio", options.uniqueness_ratio},
       {"min_rcond", options.min_rcond},
       {"max_dim", options.max_dim}};
}

nlohmann::json provenance() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"version", WQED_VERSION}, {"timestamp", stamp}};
}

}  // namespace wqed
