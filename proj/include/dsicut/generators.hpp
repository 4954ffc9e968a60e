#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsicut/graph.hpp"

namespace dsicut {

/// Two-block directed stochastic block model on N = 2n vertices.  Vertices
/// 0..n-1 form C1, n..2n-1 form C2.
struct DsbmParams {
  Index n = 0;  // block size
  double p = 0.0;
  double q = 0.0;
  double eta = 0.0;
  std::uint64_t seed = 0;
};

struct DsbmInstance {
  DirectedGraph graph;
  std::vector<int> block;  // 0 for C1, 1 for C2

  VertexSubset first_block() const;
};

/// Each unordered pair {u < v} has a rank in row-major order; the rank seeds
/// a private SplitMix64 stream whose first draw decides the arc and whose
/// second draw orients it.  Same-block arcs point either way with
/// probability 1/2; a cross arc points C1 -> C2 with probability eta.
DsbmInstance dsbm(const DsbmParams& params);

void validate(const DsbmParams& params);

/// Large-n estimate of phi_D(C1) for the given parameters.
double planted_phi_estimate(const DsbmParams& params);

enum class FixtureKind { c3, p2, p3, b2, dicycle, dipath };

/// Unit-weight fixture.  n is used by dicycle and dipath only (n >= 2).
DirectedGraph canonical(FixtureKind kind, Index n = 0);

/// Parses "c3", "p2", "p3", "b2", "dicycle:N", "dipath:N".
DirectedGraph canonical(const std::string& spec);

}  // namespace dsicut
