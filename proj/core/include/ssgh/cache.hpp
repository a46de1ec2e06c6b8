#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace ssgh {

// Hash of the library sources this build was configured from.
std::string code_version_hash();

// Directory of JSON artifacts keyed by name and code version. A disabled
// cache never hits and never writes.
class CatalogCache {
 public:
  CatalogCache() = default;
  explicit CatalogCache(std::filesystem::path dir);

  // SSGH_CACHE_DIR, else $XDG_CACHE_HOME/ssgh, else $HOME/.cache/ssgh.
  static CatalogCache from_environment(bool enabled = true);

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& directory() const { return dir_; }

  // e.g. artifact_key("matrices", 0, 4) -> "matrices-g0-n4-<version>"
  static std::string artifact_key(const std::string& kind, int genus, int labels,
                                  std::optional<int> degree = std::nullopt);

  std::optional<std::string> load(const std::string& key) const;
  // Best effort; failures to write are ignored.
  void store(const std::string& key, const std::string& content) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace ssgh
