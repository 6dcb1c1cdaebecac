#include "harsanyi/lattice_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "harsanyi/error.hpp"

namespace harsanyi::io {
namespace {

constexpr std::size_t kHeaderBytes = 4 + 2 + 1;

void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string encode(std::string_view magic, int n, std::span<const double> values) {
  std::string out;
  out.reserve(kHeaderBytes + values.size() * 8);
  out.append(magic);
  out.push_back(static_cast<char>(kLatticeFormatVersion & 0xFF));
  out.push_back(static_cast<char>(kLatticeFormatVersion >> 8));
  out.push_back(static_cast<char>(n));
  for (double x : values) put_u64_le(out, std::bit_cast<std::uint64_t>(x));
  return out;
}

std::pair<int, std::vector<double>> decode(std::string_view magic, std::string_view bytes) {
  if (bytes.size() < kHeaderBytes || bytes.substr(0, 4) != magic) {
    throw FormatError("bad magic: expected " + std::string(magic));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint16_t version = static_cast<std::uint16_t>(p[4] | (p[5] << 8));
  if (version != kLatticeFormatVersion) {
    throw FormatError("unsupported " + std::string(magic) + " version " + std::to_string(version));
  }
  const int n = p[6];
  if (n < 1 || n > kMaxVariables) throw FormatError("variable count out of range in header");
  const std::size_t count = lattice_size(n);
  if (bytes.size() != kHeaderBytes + count * 8) {
    throw FormatError("payload length does not match n=" + std::to_string(n));
  }
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = std::bit_cast<double>(get_u64_le(p + kHeaderBytes + 8 * k));
  }
  return {n, std::move(values)};
}

std::string to_csv(std::span<const double> values) {
  std::string out = "mask,value\n";
  char buf[64];
  for (std::size_t m = 0; m < values.size(); ++m) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", m, values[m]);
    out += buf;
  }
  return out;
}

}  // namespace

std::string encode_table(const MaskedOutputTable& table) {
  return encode(kTableMagic, table.n(), table.values());
}

std::string encode_interactions(const InteractionVector& iv) {
  return encode(kInteractionMagic, iv.n(), iv.values());
}

MaskedOutputTable decode_table(std::string_view bytes) {
  auto [n, values] = decode(kTableMagic, bytes);
  try {
    return MaskedOutputTable(n, std::move(values));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid table payload: ") + e.what());
  }
}

InteractionVector decode_interactions(std::string_view bytes) {
  auto [n, values] = decode(kInteractionMagic, bytes);
  try {
    return InteractionVector(n, std::move(values));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid interaction payload: ") + e.what());
  }
}

std::string table_to_csv(const MaskedOutputTable& table) { return to_csv(table.values()); }
std::string interactions_to_csv(const InteractionVector& iv) { return to_csv(iv.values()); }

MaskedOutputTable table_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "mask,value") throw FormatError("missing CSV header");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("malformed CSV row: " + line);
    std::size_t mask = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + comma, mask);
    if (ec != std::errc() || mask != values.size()) {
      throw FormatError("CSV rows must be in mask order: " + line);
    }
    values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  const int n = std::bit_width(values.size()) - 1;
  if (values.empty() || !std::has_single_bit(values.size())) {
    throw FormatError("CSV row count is not a power of two");
  }
  return MaskedOutputTable(n, std::move(values));
}

MaskedOutputTable read_table(const std::filesystem::path& path) {
  return decode_table(read_file(path));
}

InteractionVector read_interactions(const std::filesystem::path& path) {
  return decode_interactions(read_file(path));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to " + path.string());
}

}  // namespace harsanyi::io
