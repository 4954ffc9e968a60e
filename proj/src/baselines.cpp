#include "dsicut/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dsicut/rng.hpp"

namespace dsicut {

Eigen::SparseMatrix<double> normalized_adjacency(const DirectedGraph& g) {
  const Index n = g.vertex_count();
  const DegreeProfile deg = degrees(g);
  std::vector<Eigen::Triplet<double>> entries;
  for (Index i = 0; i < n; ++i) {
    for (const Neighbor& nb : g.neighbors(i)) {
      const double scale = std::sqrt(deg.d[i] * deg.d[nb.vertex]);
      entries.emplace_back(i, nb.vertex, nb.weight / scale);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

EmbeddingResult spectral_embedding(const DirectedGraph& g, int max_iters, double tol) {
  const Index n = g.vertex_count();
  if (n < 2) throw DegenerateError("spectral embedding needs at least two vertices");
  Index components = 0;
  weak_components(g, &components);
  if (components != 1) throw DegenerateError("spectral embedding needs a weakly connected graph");

  const DegreeProfile deg = degrees(g);
  const Eigen::SparseMatrix<double> m = normalized_adjacency(g);
  const Vector trivial = deg.d.cwiseSqrt().normalized();

  SplitMix64 rng(0x5EEDF1EDULL);
  Vector y(n);
  for (Index i = 0; i < n; ++i) y[i] = rng.uniform() - 0.5;
  y -= trivial.dot(y) * trivial;
  y.normalize();

  EmbeddingResult res;
  Vector my(n);
  for (res.iterations = 1; res.iterations <= max_iters; ++res.iterations) {
    my.noalias() = m * y;
    res.eigenvalue = y.dot(my);
    res.residual = (my - res.eigenvalue * y).norm();
    if (res.residual <= tol) break;
    y = 0.5 * (y + my);
    y -= trivial.dot(y) * trivial;
    y.normalize();
  }
  res.iterations = std::min(res.iterations, max_iters);
  y -= trivial.dot(y) * trivial;
  // Fix the sign so the output is reproducible: first nonzero entry positive.
  for (Index i = 0; i < n; ++i) {
    if (std::abs(y[i]) > 1e-14) {
      if (y[i] < 0) y = -y;
      break;
    }
  }
  res.vector = y.normalized();
  return res;
}

Vector vertex_embedding(const DirectedGraph& g, const EmbeddingResult& e) {
  const DegreeProfile deg = degrees(g);
  Vector v = e.vector.cwiseQuotient(deg.d.cwiseSqrt());
  const double inf = v.cwiseAbs().maxCoeff();
  if (inf > 0) v /= inf;
  return v;
}

Vector degree_imbalance(const DirectedGraph& g) {
  const DegreeProfile deg = degrees(g);
  Vector v = Vector::Zero(g.vertex_count());
  for (Index i = 0; i < v.size(); ++i)
    if (deg.d[i] > 0.0) v[i] = deg.d_delta[i] / deg.d[i];
  return v;
}

SweepResult sweep_cut(const DirectedGraph& g, const Vector& v) {
  const Index n = g.vertex_count();
  if (v.size() != n) throw DataError("sweep_cut: vector size mismatch");
  if (n < 2 || v.maxCoeff() == v.minCoeff()) throw DegenerateError("sweep_cut: constant vector");

  const DegreeProfile deg = degrees(g);
  SweepResult res;
  res.order.resize(static_cast<std::size_t>(n));
  std::iota(res.order.begin(), res.order.end(), Index{0});
  std::stable_sort(res.order.begin(), res.order.end(), [&](Index a, Index b) { return v[a] > v[b]; });

  std::vector<char> in(static_cast<std::size_t>(n), 0);
  double cut_plus = 0.0, cut_minus = 0.0, vol_s = 0.0;
  double best = std::numeric_limits<double>::infinity();
  Index best_len = -1;
  res.profile.assign(static_cast<std::size_t>(n - 1), std::numeric_limits<double>::quiet_NaN());
  for (Index k = 0; k + 1 < n; ++k) {
    const Index u = res.order[static_cast<std::size_t>(k)];
    for (std::size_t e : g.out_arcs(u)) {
      const Arc& a = g.arcs()[e];
      if (in[static_cast<std::size_t>(a.head)]) cut_minus -= a.weight;
      else cut_plus += a.weight;
    }
    for (std::size_t e : g.in_arcs(u)) {
      const Arc& a = g.arcs()[e];
      if (in[static_cast<std::size_t>(a.tail)]) cut_plus -= a.weight;
      else cut_minus += a.weight;
    }
    in[static_cast<std::size_t>(u)] = 1;
    vol_s += deg.d[u];
    const double denom = std::min(vol_s, deg.vol_total - vol_s);
    if (!(denom > 0.0)) continue;
    const double phi = std::max(0.0, std::min(cut_plus, cut_minus)) / denom;
    res.profile[static_cast<std::size_t>(k)] = phi;
    if (phi < best) {
      best = phi;
      best_len = k + 1;
    }
  }
  if (best_len < 0) throw DegenerateError("sweep_cut: no prefix has positive volume on both sides");
  res.set = VertexSubset(n);
  for (Index k = 0; k < best_len; ++k) res.set.set(res.order[static_cast<std::size_t>(k)]);
  // Report the directly recomputed value so it is bit-comparable with conductance_set.
  res.phi = conductance_set(g, deg, res.set).phi_d;
  return res;
}

SweepResult baseline_sweep(const DirectedGraph& g, int max_iters, double tol) {
  const Subgraph c = largest_weak_component(g);
  const SweepResult local = sweep_cut(c.graph, vertex_embedding(c.graph, spectral_embedding(c.graph, max_iters, tol)));
  SweepResult res;
  res.set = VertexSubset(g.vertex_count());
  for (Index v : local.set.members()) res.set.set(c.original_id[static_cast<std::size_t>(v)]);
  for (Index v : local.order) res.order.push_back(c.original_id[static_cast<std::size_t>(v)]);
  res.profile = local.profile;
  res.phi = conductance_set(g, res.set).phi_d;
  return res;
}

}  // namespace dsicut
