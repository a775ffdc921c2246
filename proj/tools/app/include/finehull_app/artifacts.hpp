#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace finehull::app {

/// %.17g with '.' as decimal separator.
std::string csv_number(double x);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& add(double x);
  CsvTable& add(long long x);
  CsvTable& add(int x) { return add(static_cast<long long>(x)); }
  CsvTable& add(const std::string& s);
  void end_row();

  std::string str() const { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
};

/// Output files collected in memory and written with a manifest listing each
/// file with its hash. Iteration order is by name, so output is reproducible.
class ArtifactSet {
 public:
  void put(const std::string& name, std::string content);
  void put_json(const std::string& name, const nlohmann::json& j);

  const std::map<std::string, std::string>& files() const noexcept { return files_; }

  nlohmann::json manifest(const std::string& subcommand, const std::string& config_hash) const;
  /// Writes every file and manifest.json under dir.
  void flush(const std::filesystem::path& dir, const std::string& subcommand,
             const std::string& config_hash) const;

 private:
  std::map<std::string, std::string> files_;
};

}  // namespace finehull::app
