#include "finehull_app/artifacts.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace finehull::app {

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) {
  for (const auto& h : header) add(h);
  end_row();
}

CsvTable& CsvTable::add(double x) { return add(csv_number(x)); }

CsvTable& CsvTable::add(long long x) { return add(std::to_string(x)); }

CsvTable& CsvTable::add(const std::string& s) {
  if (row_open_) text_.push_back(',');
  text_ += s;
  row_open_ = true;
  return *this;
}

void CsvTable::end_row() {
  text_.push_back('\n');
  row_open_ = false;
}

void ArtifactSet::put(const std::string& name, std::string content) {
  files_[name] = std::move(content);
}

void ArtifactSet::put_json(const std::string& name, const nlohmann::json& j) {
  put(name, j.dump(2) + "\n");
}

nlohmann::json ArtifactSet::manifest(const std::string& subcommand,
                                     const std::string& config_hash) const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [name, content] : files_) {
    files.push_back({{"path", name}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}});
  }
  return {{"tool", "finehull"},
          {"version", "0.1.0"},
          {"subcommand", subcommand},
          {"config_hash", config_hash},
          {"artifacts", files}};
}

void ArtifactSet::flush(const std::filesystem::path& dir, const std::string& subcommand,
                        const std::string& config_hash) const {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::filesystem::path p = dir / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + p.string());
  };
  for (const auto& [name, content] : files_) write(name, content);
  write("manifest.json", manifest(subcommand, config_hash).dump(2) + "\n");
}

}  // namespace finehull::app
