#include "harsanyi/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "harsanyi/error.hpp"
#include "harsanyi/lattice_io.hpp"

namespace harsanyi::manifest {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

ManifestWriter::ManifestWriter(fs::path dir, std::string command)
    : dir_(std::move(dir)), command_(std::move(command)) {
  fs::create_directories(dir_);
}

void ManifestWriter::set(const std::string& key, nlohmann::ordered_json value) {
  std::lock_guard lock(mutex_);
  sections_[key] = std::move(value);
}

void ManifestWriter::write(const std::string& relative, std::string_view bytes) {
  if (relative == kManifestName) throw InvalidArgument("manifest.json is reserved");
  io::write_file(dir_ / relative, bytes);
  auto digest = sha256_hex(bytes);
  std::lock_guard lock(mutex_);
  files_[fs::path(relative).generic_string()] = {std::move(digest), bytes.size()};
}

fs::path ManifestWriter::finish() {
  std::lock_guard lock(mutex_);
  nlohmann::ordered_json doc = {{"format", "harsanyi-manifest"}, {"version", 1}, {"command", command_}};
  for (const auto& [key, value] : sections_.items()) doc[key] = value;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& [path, entry] : files_) {
    files.push_back({{"path", path}, {"sha256", entry.first}, {"bytes", entry.second}});
  }
  doc["files"] = files;
  const fs::path out = dir_ / kManifestName;
  io::write_file(out, doc.dump(1) + "\n");
  return out;
}

nlohmann::json load(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  if (!fs::exists(path)) throw FormatError("no manifest in " + dir.string());
  try {
    return nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("corrupt manifest " + path.string() + ": " + e.what());
  }
}

std::string read_verified(const fs::path& file) {
  std::string bytes = io::read_file(file);
  const fs::path absolute = fs::absolute(file).lexically_normal();
  for (fs::path dir = absolute.parent_path(); !dir.empty(); dir = dir.parent_path()) {
    if (fs::exists(dir / kManifestName)) {
      const nlohmann::json doc = load(dir);
      const std::string relative = absolute.lexically_relative(dir).generic_string();
      for (const auto& entry : doc.value("files", nlohmann::json::array())) {
        if (entry.value("path", "") != relative) continue;
        if (entry.value("sha256", "") != sha256_hex(bytes)) {
          throw IntegrityError("content hash mismatch for " + file.string() + " (listed in " +
                               (dir / kManifestName).string() + ")");
        }
        return bytes;
      }
    }
    if (dir == dir.root_path()) break;
  }
  return bytes;
}

}  // namespace harsanyi::manifest
