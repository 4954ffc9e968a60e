#include "dsicut/io.hpp"

#include <charconv>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <zlib.h>

namespace dsicut {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

DirectedGraph parse_text(std::string_view text, const ParseOptions& options) {
  std::unordered_map<std::string, Index> ids;
  std::vector<std::string> labels;
  std::vector<Arc> arcs;
  auto intern = [&](std::string_view tok) {
    auto [it, inserted] = ids.try_emplace(std::string(tok), static_cast<Index>(labels.size()));
    if (inserted) labels.emplace_back(tok);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool any_data = false;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || options.comment_prefixes.find(line.front()) != std::string::npos) continue;

    const auto tok = split_ws(line);
    if (tok.size() < 2 || tok.size() > 3) fail(line_no, "expected 'tail head [weight]'");
    double w = options.default_weight;
    if (tok.size() == 3) {
      const auto* first = tok[2].data();
      const auto* last = first + tok[2].size();
      auto [ptr, ec] = std::from_chars(first, last, w);
      if (ec != std::errc{} || ptr != last || !std::isfinite(w))
        fail(line_no, "invalid weight '" + std::string(tok[2]) + "'");
      if (w < 0.0) fail(line_no, "negative weight");
    }
    const Index t = intern(tok[0]);
    const Index h = intern(tok[1]);
    arcs.push_back({t, h, w});
    any_data = true;
  }
  if (!any_data) throw DataError("empty graph: no arc lines found");
  const auto n = static_cast<Index>(labels.size());
  return DirectedGraph::from_arcs(n, std::move(arcs), std::move(labels));
}

bool starts_with_mm_banner(std::string_view text) { return text.substr(0, 14) == "%%MatrixMarket"; }

DirectedGraph parse_matrix_market(std::string_view text) {
  std::size_t line_no = 0, pos = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos > text.size()) return std::nullopt;
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    return line;
  };
  auto lower = [](std::string_view t) {
    std::string out(t);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };

  const auto banner = split_ws(*next_line());
  if (banner.size() != 5 || lower(banner[1]) != "matrix" || lower(banner[2]) != "coordinate")
    fail(line_no, "only 'matrix coordinate' MatrixMarket files are supported");
  const std::string field = lower(banner[3]), symmetry = lower(banner[4]);
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer") fail(line_no, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric") fail(line_no, "unsupported symmetry '" + symmetry + "'");

  auto parse_int = [&](std::string_view tok) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line_no, "invalid integer '" + std::string(tok) + "'");
    return v;
  };

  std::optional<std::string_view> line;
  while ((line = next_line()) && (line->empty() || line->front() == '%')) {
  }
  if (!line) throw DataError("MatrixMarket: missing size line");
  const auto size = split_ws(*line);
  if (size.size() != 3) fail(line_no, "expected 'rows cols entries'");
  const long long rows = parse_int(size[0]), cols = parse_int(size[1]), nnz = parse_int(size[2]);
  if (rows != cols || rows < 1) fail(line_no, "adjacency matrix must be square and nonempty");
  if (rows > std::numeric_limits<Index>::max()) fail(line_no, "too many vertices");

  std::vector<Arc> arcs;
  long long seen = 0;
  while ((line = next_line())) {
    if (line->empty() || line->front() == '%') continue;
    const auto tok = split_ws(*line);
    if (tok.size() != (pattern ? 2u : 3u)) fail(line_no, pattern ? "expected 'row col'" : "expected 'row col value'");
    const long long i = parse_int(tok[0]), j = parse_int(tok[1]);
    if (i < 1 || i > rows || j < 1 || j > rows) fail(line_no, "index out of range");
    double w = 1.0;
    if (!pattern) {
      auto [ptr, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), w);
      if (ec != std::errc{} || ptr != tok[2].data() + tok[2].size() || !std::isfinite(w))
        fail(line_no, "invalid weight '" + std::string(tok[2]) + "'");
      if (w < 0.0) fail(line_no, "negative weight");
    }
    arcs.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), w});
    if (symmetry == "symmetric" && i != j) arcs.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), w});
    ++seen;
  }
  if (seen != nnz) throw DataError("MatrixMarket: header announces " + std::to_string(nnz) + " entries, found " +
                                   std::to_string(seen));
  return DirectedGraph::from_arcs(static_cast<Index>(rows), std::move(arcs));
}

void write_text_file(const std::filesystem::path& path, const std::string& s) {
  if (path.extension() == ".gz") {
    gzFile f = gzopen(path.c_str(), "wb");
    if (!f) throw DataError("cannot write " + path.string());
    const int wrote = s.empty() ? 0 : gzwrite(f, s.data(), static_cast<unsigned>(s.size()));
    gzclose(f);
    if (wrote != static_cast<int>(s.size())) throw DataError("write error in " + path.string());
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path.string());
  f << s;
  if (!f) throw DataError("write error in " + path.string());
}

bool is_mtx_path(const std::filesystem::path& path) {
  auto p = path;
  if (p.extension() == ".gz") p = p.stem();
  return p.extension() == ".mtx";
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in, const ParseOptions& options) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_text(text, options);
}

std::string read_file_maybe_gz(const std::filesystem::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw DataError("cannot open " + path.string());
  std::string out;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  const bool failed = got < 0;
  gzclose(f);
  if (failed) throw DataError("read error in " + path.string());
  return out;
}

DirectedGraph load_edge_list_file(const std::filesystem::path& path, const ParseOptions& options) {
  const std::string text = read_file_maybe_gz(path);
  try {
    return parse_text(text, options);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_edge_list(std::ostream& out, const DirectedGraph& g) {
  char wbuf[64];
  for (const Arc& a : g.arcs()) {
    std::snprintf(wbuf, sizeof wbuf, "%.17g", a.weight);
    out << g.label(a.tail) << ' ' << g.label(a.head) << ' ' << wbuf << '\n';
  }
}

void save_edge_list_file(const std::filesystem::path& path, const DirectedGraph& g) {
  std::ostringstream text;
  save_edge_list(text, g);
  write_text_file(path, text.str());
}

void save_matrix_market(std::ostream& out, const DirectedGraph& g) {
  char wbuf[64];
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << g.vertex_count() << ' ' << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs()) {
    std::snprintf(wbuf, sizeof wbuf, "%.17g", a.weight);
    out << a.tail + 1 << ' ' << a.head + 1 << ' ' << wbuf << '\n';
  }
}

DirectedGraph load_graph_file(const std::filesystem::path& path, const ParseOptions& options) {
  const std::string text = read_file_maybe_gz(path);
  try {
    return starts_with_mm_banner(text) ? parse_matrix_market(text) : parse_text(text, options);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_graph_file(const std::filesystem::path& path, const DirectedGraph& g) {
  std::ostringstream text;
  if (is_mtx_path(path)) save_matrix_market(text, g);
  else save_edge_list(text, g);
  write_text_file(path, text.str());
}

void write_file(const std::filesystem::path& path, const std::string& contents) { write_text_file(path, contents); }

}  // namespace dsicut
