#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dsicut {

/// One registry line: "name url format [sha256]".  Blank lines and lines
/// starting with '#' are ignored.
struct RegistryEntry {
  std::string name;
  std::string url;
  std::string format;  // "edgelist", "edgelist.gz" or "mtx"
  std::optional<std::string> sha256;
};

std::vector<RegistryEntry> parse_registry(const std::string& text);
std::vector<RegistryEntry> load_registry(const std::filesystem::path& path);

/// DSICUT_CACHE if set, else $XDG_CACHE_HOME/dsicut, else ~/.cache/dsicut.
std::filesystem::path cache_dir();

/// Cached file name for an entry: "<name>.<format>".
std::filesystem::path cache_path(const RegistryEntry& entry, const std::filesystem::path& dir);

struct FetchResult {
  std::filesystem::path path;
  std::string sha256;
  bool downloaded = false;  // false when served from the cache
};

/// Downloads entry.url into dir unless a cached copy with a matching checksum
/// exists.  file:// URLs work offline.  Throws DataError on transfer failure
/// or checksum mismatch; a mismatching download is not kept.
FetchResult fetch(const RegistryEntry& entry, const std::filesystem::path& dir);

}  // namespace dsicut
