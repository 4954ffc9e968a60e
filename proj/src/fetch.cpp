#include "dsicut/fetch.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <curl/curl.h>

#include "dsicut/graph.hpp"
#include "dsicut/io.hpp"
#include "dsicut/report.hpp"

namespace dsicut {

namespace {

std::size_t append_body(char* data, std::size_t size, std::size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

std::string read_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string download(const std::string& url) {
  static const CURLcode global = curl_global_init(CURL_GLOBAL_DEFAULT);
  if (global != CURLE_OK) throw DataError("libcurl initialisation failed");
  CURL* curl = curl_easy_init();
  if (!curl) throw DataError("libcurl handle allocation failed");
  std::string body;
  char err[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, append_body);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(curl, CURLOPT_ERRORBUFFER, err);
  curl_easy_setopt(curl, CURLOPT_USERAGENT, "dsicut-fetch");
  const CURLcode rc = curl_easy_perform(curl);
  curl_easy_cleanup(curl);
  if (rc != CURLE_OK) throw DataError("download of " + url + " failed: " + (err[0] ? err : curl_easy_strerror(rc)));
  return body;
}

}  // namespace

std::vector<RegistryEntry> parse_registry(const std::string& text) {
  std::vector<RegistryEntry> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    RegistryEntry e;
    if (!(fields >> e.name) || e.name.front() == '#') continue;
    std::string sha;
    if (!(fields >> e.url >> e.format))
      throw DataError("registry line " + std::to_string(line_no) + ": expected 'name url format [sha256]'");
    if (e.format != "edgelist" && e.format != "edgelist.gz" && e.format != "mtx" && e.format != "mtx.gz")
      throw DataError("registry line " + std::to_string(line_no) + ": unknown format '" + e.format + "'");
    if (fields >> sha) e.sha256 = sha;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RegistryEntry> load_registry(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw DataError("registry not found: " + path.string());
  return parse_registry(read_raw(path));
}

std::filesystem::path cache_dir() {
  if (const char* c = std::getenv("DSICUT_CACHE"); c && *c) return c;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "dsicut";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "dsicut";
  return std::filesystem::temp_directory_path() / "dsicut-cache";
}

std::filesystem::path cache_path(const RegistryEntry& entry, const std::filesystem::path& dir) {
  return dir / (entry.name + "." + entry.format);
}

FetchResult fetch(const RegistryEntry& entry, const std::filesystem::path& dir) {
  FetchResult res;
  res.path = cache_path(entry, dir);
  if (std::filesystem::exists(res.path)) {
    res.sha256 = sha256_hex(read_raw(res.path));
    if (!entry.sha256 || *entry.sha256 == res.sha256) return res;
  }
  const std::string body = download(entry.url);
  res.sha256 = sha256_hex(body);
  if (entry.sha256 && *entry.sha256 != res.sha256)
    throw DataError("checksum mismatch for " + entry.name + ": expected " + *entry.sha256 + ", got " + res.sha256);
  std::filesystem::create_directories(dir);
  const auto tmp = res.path.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw DataError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, res.path);
  res.downloaded = true;
  return res;
}

}  // namespace dsicut
