#include "pcvi/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pcvi/errors.hpp"

namespace pcvi {

const char* const kToolVersion = "0.1.0";

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary);
  if (!impl_->out) {
    delete impl_;
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) impl_->out << ',';
    const std::string& f = fields[i];
    const bool needs_quotes =
        f.find_first_of(",\"\r\n") != std::string::npos;
    if (needs_quotes) {
      impl_->out << '"';
      for (char c : f) {
        if (c == '"') impl_->out << '"';
        impl_->out << c;
      }
      impl_->out << '"';
    } else {
      impl_->out << f;
    }
  }
  impl_->out << "\r\n";
}

void write_pgm(const std::string& path, int width, int height,
               const std::vector<double>& values, int bits) {
  if (bits != 8 && bits != 16) throw ContractViolation("pgm depth must be 8 or 16 bits");
  if (values.size() != static_cast<std::size_t>(width) * height)
    throw ContractViolation("pgm: value count does not match dimensions");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const int maxval = (bits == 8) ? 255 : 65535;
  out << "P5\n" << width << " " << height << "\n" << maxval << "\n";
  for (double v : values) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    const unsigned level = static_cast<unsigned>(std::lround(clamped * maxval));
    if (bits == 8) {
      out.put(static_cast<char>(level));
    } else {
      out.put(static_cast<char>((level >> 8) & 0xFF)); // big-endian
      out.put(static_cast<char>(level & 0xFF));
    }
  }
}

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

} // namespace

std::uint32_t crc32(const void* data, std::size_t size) {
  static const std::array<std::uint32_t, 256> table = make_crc_table();
  std::uint32_t crc = 0xFFFFFFFFu;
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i)
    crc = table[(crc ^ bytes[i]) & 0xFF] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

std::string file_crc32_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for checksum");
  static const std::array<std::uint32_t, 256> table = make_crc_table();
  std::uint32_t crc = 0xFFFFFFFFu;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i)
      crc = table[(crc ^ static_cast<unsigned char>(buf[i])) & 0xFF] ^ (crc >> 8);
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  crc ^= 0xFFFFFFFFu;
  char hex[9];
  std::snprintf(hex, sizeof(hex), "%08x", crc);
  return std::string(hex);
}

struct ManifestBuilder::Impl {
  nlohmann::json j;
};

ManifestBuilder::ManifestBuilder(std::string command, const nlohmann::json& config_echo)
    : impl_(new Impl) {
  impl_->j["tool"] = "pcvi";
  impl_->j["version"] = kToolVersion;
  impl_->j["command"] = std::move(command);
  impl_->j["config"] = config_echo;
  impl_->j["outputs"] = nlohmann::json::array();
  impl_->j["results"] = nlohmann::json::object();
}

ManifestBuilder::~ManifestBuilder() { delete impl_; }

void ManifestBuilder::set_seed(std::uint64_t seed) { impl_->j["seed"] = seed; }

void ManifestBuilder::add_output(const std::string& path) {
  impl_->j["outputs"].push_back({{"path", path}, {"crc32", file_crc32_hex(path)}});
}

void ManifestBuilder::add_result(const std::string& key, double v) {
  impl_->j["results"][key] = v;
}

void ManifestBuilder::add_result(const std::string& key, long v) {
  impl_->j["results"][key] = v;
}

void ManifestBuilder::add_result(const std::string& key, const std::string& v) {
  impl_->j["results"][key] = v;
}

void ManifestBuilder::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << impl_->j.dump(2) << "\n";
}

} // namespace pcvi
