#include "ssgh/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#ifndef SSGH_SOURCE_HASH
#define SSGH_SOURCE_HASH "unversioned"
#endif

namespace ssgh {

std::string code_version_hash() { return std::string(SSGH_VERSION_STRING) + "-" + SSGH_SOURCE_HASH; }

CatalogCache::CatalogCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

CatalogCache CatalogCache::from_environment(bool enabled) {
  if (!enabled) return {};
  if (const char* d = std::getenv("SSGH_CACHE_DIR"); d && *d) return CatalogCache(d);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return CatalogCache(std::filesystem::path(x) / "ssgh");
  if (const char* h = std::getenv("HOME"); h && *h) return CatalogCache(std::filesystem::path(h) / ".cache" / "ssgh");
  return {};
}

std::string CatalogCache::artifact_key(const std::string& kind, int genus, int labels, std::optional<int> degree) {
  std::ostringstream os;
  os << kind << "-g" << genus << "-n" << labels;
  if (degree) os << "-k" << *degree;
  os << "-" << code_version_hash();
  return os.str();
}

std::optional<std::string> CatalogCache::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void CatalogCache::store(const std::string& key, const std::string& content) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  std::random_device rd;
  auto tmp = dir_ / (key + ".json.tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    out << content;
    if (!out) {
      out.close();
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, dir_ / (key + ".json"), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace ssgh
