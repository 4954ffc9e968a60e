#pragma once
// Shared fixtures and independent reference computations for the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "dsicut/graph.hpp"
#include "dsicut/rng.hpp"

namespace dsicut::testing {

inline Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double t : v) x[i++] = t;
  return x;
}

/// 1-based arc list as written in fixtures ("1 2" is arc 0 -> 1).
inline DirectedGraph graph1(Index n, std::initializer_list<std::array<double, 3>> arcs) {
  std::vector<Arc> out;
  for (const auto& a : arcs) out.push_back({static_cast<Index>(a[0]) - 1, static_cast<Index>(a[1]) - 1, a[2]});
  return DirectedGraph::from_arcs(n, std::move(out));
}

/// Each ordered pair gets an arc with probability density; weights are 1 or
/// small integers when weighted is set.
inline DirectedGraph random_digraph(SplitMix64& rng, Index n, double density, bool weighted = false) {
  std::vector<Arc> arcs;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && rng.uniform() < density)
        arcs.push_back({i, j, weighted ? 1.0 + static_cast<double>(rng.below(4)) : 1.0});
  return DirectedGraph::from_arcs(n, std::move(arcs));
}

inline bool weakly_connected(const DirectedGraph& g) {
  Index c = 0;
  weak_components(g, &c);
  return c == 1;
}

/// Random weakly connected digraph; resamples until connected.
inline DirectedGraph random_connected(SplitMix64& rng, Index n, double density, bool weighted = false) {
  for (;;) {
    DirectedGraph g = random_digraph(rng, n, density, weighted);
    if (weakly_connected(g)) return g;
  }
}

/// Direct evaluation of phi_D(S) from the arc list, independent of the library's cut code.
struct NaivePhi {
  double phi_d, phi_plus, phi_minus;
  bool defined;
};

inline NaivePhi naive_phi(const DirectedGraph& g, std::uint64_t mask) {
  double out = 0, in = 0, vs = 0, vc = 0;
  auto inside = [&](Index v) { return ((mask >> v) & 1ULL) != 0; };
  for (const Arc& a : g.arcs()) {
    const bool t = inside(a.tail), h = inside(a.head);
    if (t && !h) out += a.weight;
    if (!t && h) in += a.weight;
    (t ? vs : vc) += a.weight;
    (h ? vs : vc) += a.weight;
  }
  const double m = std::min(vs, vc);
  if (!(m > 0)) return {0, 0, 0, false};
  return {std::min(out, in) / m, out / m, in / m, true};
}

inline double naive_phi_min(const DirectedGraph& g) {
  const Index n = g.vertex_count();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
    const NaivePhi p = naive_phi(g, m);
    if (p.defined) best = std::min(best, p.phi_d);
  }
  return best;
}

/// Adjacency code of a digraph on n <= 6 vertices: 2 bits per unordered pair.
inline std::uint64_t pair_code(Index n, const std::vector<std::uint8_t>& adj, const std::array<Index, 8>& perm) {
  std::uint64_t code = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) code = (code << 1) | adj[static_cast<std::size_t>(perm[i] * n + perm[j])];
  return code;
}

/// One representative per isomorphism class of digraphs on n vertices
/// (n <= 5), including disconnected and arc-free ones.
inline std::vector<DirectedGraph> all_digraphs_up_to_iso(Index n) {
  std::vector<std::array<Index, 8>> perms;
  std::array<Index, 8> p{};
  std::iota(p.begin(), p.begin() + n, Index{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.begin() + n));

  const Index slots = n * (n - 1);
  std::vector<DirectedGraph> out;
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n * n));
  for (std::uint64_t code = 0; code < (1ULL << slots); ++code) {
    // Decode in the same bit order pair_code uses.
    Index bit = slots;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        if (i == j) {
          adj[static_cast<std::size_t>(i * n + j)] = 0;
          continue;
        }
        --bit;
        adj[static_cast<std::size_t>(i * n + j)] = static_cast<std::uint8_t>((code >> bit) & 1ULL);
      }
    bool canonical = true;
    for (const auto& q : perms)
      if (pair_code(n, adj, q) < code) {
        canonical = false;
        break;
      }
    if (!canonical) continue;
    std::vector<Arc> arcs;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (adj[static_cast<std::size_t>(i * n + j)]) arcs.push_back({i, j, 1.0});
    out.push_back(DirectedGraph::from_arcs(n, std::move(arcs)));
  }
  return out;
}

}  // namespace dsicut::testing
