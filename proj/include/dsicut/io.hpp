#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dsicut/graph.hpp"

namespace dsicut {

struct ParseOptions {
  /// Lines whose first non-blank character is one of these are comments.
  std::string comment_prefixes = "#%";
  double default_weight = 1.0;
};

/// Reads "tail head [weight]" lines.  Vertex labels are arbitrary tokens and
/// are densified in order of first appearance.  Throws DataError with the
/// offending line number on malformed input, negative weights, or when no
/// arc line is present.
DirectedGraph load_edge_list(std::istream& in, const ParseOptions& options = {});

/// Same as above but from a file; gzip-compressed files are decompressed
/// transparently (detected by magic bytes, not extension).
DirectedGraph load_edge_list_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Writes one "tail head weight" line per stored arc using original labels.
/// Isolated vertices are not representable in this format.
void save_edge_list(std::ostream& out, const DirectedGraph& g);

/// Writes to a file; a ".gz" suffix produces gzip output.
void save_edge_list_file(const std::filesystem::path& path, const DirectedGraph& g);

/// MatrixMarket "matrix coordinate real general", 1-based vertex ids.
void save_matrix_market(std::ostream& out, const DirectedGraph& g);

/// Edge list or MatrixMarket coordinate file (detected by the %%MatrixMarket
/// banner), optionally gzip-compressed.  MatrixMarket vertices are labelled
/// 1..n and keep isolated vertices.
DirectedGraph load_graph_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Format by suffix: ".mtx" or ".mtx.gz" writes MatrixMarket, anything else
/// an edge list; a trailing ".gz" compresses.
void save_graph_file(const std::filesystem::path& path, const DirectedGraph& g);

/// Writes contents verbatim; a ".gz" suffix compresses.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Full contents of a (possibly gzip-compressed) file.
std::string read_file_maybe_gz(const std::filesystem::path& path);

}  // namespace dsicut
