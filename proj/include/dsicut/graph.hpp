#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dsicut {

using Index = std::int32_t;
using Vector = Eigen::VectorXd;

/// Raised for malformed input data (parse errors, invalid weights, empty graphs).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a cut quantity has a zero denominator or the graph cannot be cut.
class DegenerateError : public DataError {
public:
  using DataError::DataError;
};

/// Raised when an exhaustive routine is asked to enumerate beyond its cap.
class SizeLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  Index tail = 0;
  Index head = 0;
  double weight = 0.0;

  bool operator==(const Arc&) const = default;
};

struct Neighbor {
  Index vertex = 0;
  double weight = 0.0;  // w(i->j) + w(j->i)
};

struct BuildStats {
  std::size_t self_loops_dropped = 0;
  std::size_t zero_weight_dropped = 0;
  std::size_t parallel_merged = 0;
};

/// Immutable weighted digraph with out/in arc lists and a symmetrized
/// neighbour list.  Arcs are stored sorted by (tail, head); every ordered
/// pair appears at most once and every stored weight is strictly positive.
class DirectedGraph {
public:
  DirectedGraph() = default;

  /// Builds a graph from raw arcs.  Self-loops and zero-weight arcs are
  /// dropped, parallel arcs are merged by summing their weights.  Labels
  /// default to "1".."n" when empty.
  static DirectedGraph from_arcs(Index vertex_count, std::vector<Arc> arcs,
                                 std::vector<std::string> labels = {});

  Index vertex_count() const { return vertex_count_; }
  std::size_t arc_count() const { return arcs_.size(); }

  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const std::size_t> out_arcs(Index v) const;
  std::span<const std::size_t> in_arcs(Index v) const;
  std::span<const Neighbor> neighbors(Index v) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index v) const { return labels_[static_cast<std::size_t>(v)]; }
  const BuildStats& build_stats() const { return stats_; }

  double total_weight() const { return total_weight_; }

private:
  Index vertex_count_ = 0;
  std::vector<Arc> arcs_;
  // CSR-style offsets into out_index_/in_index_/sym_.
  std::vector<std::size_t> out_offsets_, out_index_;
  std::vector<std::size_t> in_offsets_, in_index_;
  std::vector<std::size_t> sym_offsets_;
  std::vector<Neighbor> sym_;
  std::vector<std::string> labels_;
  BuildStats stats_;
  double total_weight_ = 0.0;
};

struct DegreeProfile {
  Vector d_out, d_in, d, d_delta;
  double vol_total = 0.0;
};

DegreeProfile degrees(const DirectedGraph& g);

/// Boolean membership over the vertex set.
class VertexSubset {
public:
  VertexSubset() = default;
  explicit VertexSubset(Index vertex_count) : member_(static_cast<std::size_t>(vertex_count), 0) {}

  static VertexSubset from_members(Index vertex_count, std::span<const Index> members);
  static VertexSubset from_mask(Index vertex_count, std::uint64_t mask);

  Index vertex_count() const { return static_cast<Index>(member_.size()); }
  bool contains(Index v) const { return member_[static_cast<std::size_t>(v)] != 0; }
  void set(Index v, bool in = true) { member_[static_cast<std::size_t>(v)] = in ? 1 : 0; }
  Index size() const;
  bool is_proper() const {
    const Index k = size();
    return k > 0 && k < vertex_count();
  }

  VertexSubset complement() const;
  std::vector<Index> members() const;
  /// +1 on members, -1 elsewhere.
  Vector indicator() const;

  bool operator==(const VertexSubset&) const = default;

private:
  std::vector<char> member_;
};

struct CutValues {
  double cut_plus = 0.0;   // weight leaving S
  double cut_minus = 0.0;  // weight entering S
  double vol_s = 0.0;
  double vol_comp = 0.0;
};

struct Conductance {
  double phi_d = 0.0;
  double phi_plus = 0.0;
  double phi_minus = 0.0;
};

CutValues cut_values(const DirectedGraph& g, const VertexSubset& s);
CutValues cut_values(const DirectedGraph& g, const DegreeProfile& deg, const VertexSubset& s);

/// Directed conductance of S; throws DegenerateError if min(Vol S, Vol S^c) = 0.
Conductance conductance_set(const DirectedGraph& g, const VertexSubset& s);
Conductance conductance_set(const DirectedGraph& g, const DegreeProfile& deg, const VertexSubset& s);

/// Conductance from precomputed cut values.
Conductance conductance_from_cut(const CutValues& c);

struct Subgraph {
  DirectedGraph graph;
  std::vector<Index> original_id;  // new id -> id in the parent graph
};

/// Weak component id per vertex (components numbered by smallest member id).
std::vector<Index> weak_components(const DirectedGraph& g, Index* component_count = nullptr);

/// Induced subgraph on the largest weakly connected component.  Ties go to
/// the component containing the smallest vertex id.
Subgraph largest_weak_component(const DirectedGraph& g);

Subgraph induced_subgraph(const DirectedGraph& g, std::span<const Index> vertices);

}  // namespace dsicut
