#include "rpcm/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace rpcm::io {

std::string num17(double v) {
  // std::to_chars is locale-independent, unlike printf
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open " + path.string());
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") != std::string::npos) {
      out_ << '"';
      for (char c : f) {
        if (c == '"') out_ << '"';
        out_ << c;
      }
      out_ << '"';
    } else {
      out_ << f;
    }
  }
  out_ << "\r\n";
}

void CsvWriter::close() { out_.close(); }

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

RunManifest::RunManifest(std::string command, json config, std::uint64_t seed)
    : command_(std::move(command)), config_(std::move(config)), seed_(seed) {}

void RunManifest::add_file(const std::filesystem::path& path) {
  json f;
  f["name"] = path.filename().string();
  f["fnv1a64"] = hex64(fnv1a_file(path));
  f["bytes"] = static_cast<std::uint64_t>(std::filesystem::file_size(path));
  files_.push_back(std::move(f));
}

void RunManifest::add_warning(const std::string& w) { warnings_.push_back(w); }

void RunManifest::write(const std::filesystem::path& dir) {
  json j;
  j["command"] = command_;
  j["config"] = config_;
  j["seed"] = seed_;
  j["files"] = files_;
  j["warnings"] = warnings_;
  auto now = std::chrono::system_clock::now().time_since_epoch();
  j["created_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  write_json(dir / "manifest.json", j);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace rpcm::io
