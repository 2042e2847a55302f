#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace rpcm::io {

using json = nlohmann::ordered_json;

// 17 significant digits, '.' decimal separator, locale-independent
std::string num17(double v);

// RFC-4180 writer: CRLF records, quoting only where needed
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream out_;
};

std::uint64_t fnv1a_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t v);

// Every emitted file is listed here with a content hash; the created
// timestamp is informational and excluded from determinism comparisons.
class RunManifest {
 public:
  RunManifest(std::string command, json config, std::uint64_t seed);
  void add_file(const std::filesystem::path& path);
  void add_warning(const std::string& w);
  const std::vector<std::string>& warnings() const { return warnings_; }
  void write(const std::filesystem::path& dir);

 private:
  std::string command_;
  json config_;
  std::uint64_t seed_;
  std::vector<json> files_;
  std::vector<std::string> warnings_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace rpcm::io
