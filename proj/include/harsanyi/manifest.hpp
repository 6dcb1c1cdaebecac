#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

namespace harsanyi::manifest {

inline constexpr std::string_view kManifestName = "manifest.json";

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// Writes a command's output files and records each one's content hash.
///
/// write() may be called from several workers; the manifest itself is
/// emitted once by finish(), with files sorted by relative path so that
/// identical runs produce identical manifests.
class ManifestWriter {
 public:
  ManifestWriter(std::filesystem::path dir, std::string command);

  const std::filesystem::path& dir() const { return dir_; }

  /// Top-level metadata section (parameters, hyperparameters, summaries).
  void set(const std::string& key, nlohmann::ordered_json value);

  /// Writes dir/relative and records its hash. Thread-safe.
  void write(const std::string& relative, std::string_view bytes);

  /// Writes manifest.json. Returns its path.
  std::filesystem::path finish();

 private:
  std::filesystem::path dir_;
  std::string command_;
  std::mutex mutex_;
  nlohmann::ordered_json sections_ = nlohmann::ordered_json::object();
  std::map<std::string, std::pair<std::string, std::size_t>> files_;
};

/// Reads a file, verifying its hash against the nearest enclosing manifest
/// that lists it. Files not covered by any manifest are read unverified.
/// Throws IntegrityError on a mismatch.
std::string read_verified(const std::filesystem::path& file);

/// Parsed manifest.json from a directory; throws FormatError if absent.
nlohmann::json load(const std::filesystem::path& dir);

}  // namespace harsanyi::manifest
