#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "dsicut/graph.hpp"

namespace dsicut {

struct EmbeddingResult {
  Vector vector;         // unit 2-norm, orthogonal to sqrt(d) / |sqrt(d)|
  double eigenvalue = 0.0;  // of D^-1/2 W D^-1/2 (1 - eigenvalue for the Laplacian)
  double residual = 0.0;
  int iterations = 0;
};

/// D^-1/2 W D^-1/2 with W the symmetrized weights w(i->j) + w(j->i).
Eigen::SparseMatrix<double> normalized_adjacency(const DirectedGraph& g);

/// Second eigenvector of the normalized Laplacian of the symmetrized graph,
/// by power iteration on (I + D^-1/2 W D^-1/2) / 2 with the trivial
/// eigenvector deflated.  Throws DegenerateError on weakly disconnected input.
EmbeddingResult spectral_embedding(const DirectedGraph& g, int max_iters = 5000, double tol = 1e-8);

/// Vertex-space embedding D^-1/2 y, rescaled to |.|_inf = 1.
Vector vertex_embedding(const DirectedGraph& g, const EmbeddingResult& e);

/// Net out-flow share d_delta / d per vertex (0 where d = 0).  A cheap
/// direction-aware ordering: sources sort first, sinks last.
Vector degree_imbalance(const DirectedGraph& g);

struct SweepResult {
  VertexSubset set;
  double phi = 0.0;
  /// phi_D of each prefix of length 1..n-1; NaN where a side has zero volume.
  std::vector<double> profile;
  std::vector<Index> order;
};

/// Orders vertices by v descending (ties by id) and returns the prefix with
/// the smallest directed conductance.  O(m + n log n).
SweepResult sweep_cut(const DirectedGraph& g, const Vector& v);

/// The comparison baseline: sweep of the symmetrized spectral embedding of
/// the largest weak component.  The set is reported in g's vertex ids and phi
/// is evaluated on g.
SweepResult baseline_sweep(const DirectedGraph& g, int max_iters = 5000, double tol = 1e-8);

}  // namespace dsicut
