#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace pcvi {

// Shortest round-trip decimal form of a double (locale-free).
std::string format_double(double value);

// Minimal RFC-4180 writer: CRLF records, mandatory header row, quoting only
// where a field needs it.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& fields);

private:
  struct Impl;
  Impl* impl_;
};

// Binary PGM (P5). values must be pre-scaled to [0, 1]; maxval is 255 or
// 65535 depending on bits (16-bit samples are big-endian per the format).
void write_pgm(const std::string& path, int width, int height,
               const std::vector<double>& values, int bits);

// IEEE CRC-32 (reflected, polynomial 0xEDB88320) of a file, as 8 hex digits.
std::uint32_t crc32(const void* data, std::size_t size);
std::string file_crc32_hex(const std::string& path);

// Per-run manifest: resolved config echo, tool version, seed, and the output
// inventory with checksums.
class ManifestBuilder {
public:
  ManifestBuilder(std::string command, const nlohmann::json& config_echo);
  ~ManifestBuilder();
  ManifestBuilder(const ManifestBuilder&) = delete;
  ManifestBuilder& operator=(const ManifestBuilder&) = delete;

  void set_seed(std::uint64_t seed);
  void add_output(const std::string& path);          // records path + crc32
  void add_result(const std::string& key, double v);
  void add_result(const std::string& key, long v);
  void add_result(const std::string& key, const std::string& v);
  void write(const std::string& path) const;

private:
  struct Impl;
  Impl* impl_;
};

extern const char* const kToolVersion;

} // namespace pcvi
