#pragma once

#include <cstdint>

#include "dsicut/graph.hpp"

namespace dsicut {

/// Exact minima over all nonempty proper subsets.  Vertex 0 is pinned to one
/// side, so 2^(n-1) - 1 representatives are enumerated.
struct OracleResult {
  double phi_d_min = 0.0;
  double phi_plus_min = 0.0;
  double phi_minus_min = 0.0;
  VertexSubset argmin_d;      // contains vertex 0
  VertexSubset argmin_plus;
  VertexSubset argmin_minus;
  std::uint64_t subsets_enumerated = 0;
};

inline constexpr Index default_oracle_limit = 24;

/// Throws SizeLimitError when vertex_count > limit.  Ties go to the subset
/// with the smallest bitmask (bit i = vertex i).
OracleResult brute_conductance(const DirectedGraph& g, Index limit = default_oracle_limit);

struct BinaryMinimum {
  double r_min = 0.0;
  VertexSubset argmin;  // the +1 entries
};

/// Minimum of r over nonconstant +-1 vectors (x_0 = +1, since r(-x) = r(x)).
BinaryMinimum brute_binary_r_min(const DirectedGraph& g, const DegreeProfile& deg, Index limit = 20);

}  // namespace dsicut
