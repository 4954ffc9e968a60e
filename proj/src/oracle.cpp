#include "dsicut/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "dsicut/functionals.hpp"

namespace dsicut {

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t mask = 0;

  void offer(double v, std::uint64_t m) {
    if (!std::isfinite(value)) {
      value = v;
      mask = m;
      return;
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(value));
    if (v < value - tol || (v <= value + tol && m < mask)) {
      value = std::min(v, value);
      mask = m;
    }
  }
};

}  // namespace

OracleResult brute_conductance(const DirectedGraph& g, Index limit) {
  const Index n = g.vertex_count();
  if (n > limit || n > 62) throw SizeLimitError("oracle: graph has " + std::to_string(n) + " vertices, limit is " +
                                                std::to_string(std::min<Index>(limit, 62)));
  if (n < 2) throw DegenerateError("oracle: graph needs at least two vertices");
  const DegreeProfile deg = degrees(g);
  const std::uint64_t full = (1ULL << n) - 1;

  // Gray-code walk over the free vertices 1..n-1 with vertex 0 fixed in S.
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  in[0] = 1;
  double vol_s = deg.d[0];
  double cut_plus = deg.d_out[0], cut_minus = deg.d_in[0];
  auto toggle = [&](Index u) {
    const bool entering = !in[static_cast<std::size_t>(u)];
    const double s = entering ? 1.0 : -1.0;
    for (std::size_t e : g.out_arcs(u)) {
      const Arc& a = g.arcs()[e];
      if (in[static_cast<std::size_t>(a.head)]) cut_minus -= s * a.weight;
      else cut_plus += s * a.weight;
    }
    for (std::size_t e : g.in_arcs(u)) {
      const Arc& a = g.arcs()[e];
      if (in[static_cast<std::size_t>(a.tail)]) cut_plus -= s * a.weight;
      else cut_minus += s * a.weight;
    }
    in[static_cast<std::size_t>(u)] = entering ? 1 : 0;
    vol_s += s * deg.d[u];
  };

  Best best_d, best_plus, best_minus;
  OracleResult res;
  const std::uint64_t states = 1ULL << (n - 1);
  std::uint64_t mask = 1;
  for (std::uint64_t k = 0; k < states; ++k) {
    if (k > 0) {
      const Index u = static_cast<Index>(std::countr_zero(k)) + 1;
      toggle(u);
      mask ^= 1ULL << u;
    }
    if (mask == full) continue;
    ++res.subsets_enumerated;
    const double denom = std::min(vol_s, deg.vol_total - vol_s);
    if (!(denom > 0.0)) continue;
    const double cp = std::max(0.0, cut_plus) / denom;
    const double cm = std::max(0.0, cut_minus) / denom;
    const std::uint64_t comp = full & ~mask;
    best_d.offer(std::min(cp, cm), mask);
    // phi+(S^c) = phi-(S) and vice versa.
    best_plus.offer(cp, mask);
    best_plus.offer(cm, comp);
    best_minus.offer(cm, mask);
    best_minus.offer(cp, comp);
  }
  if (!std::isfinite(best_d.value)) throw DegenerateError("oracle: no subset has positive volume on both sides");

  res.argmin_d = VertexSubset::from_mask(n, best_d.mask);
  res.argmin_plus = VertexSubset::from_mask(n, best_plus.mask);
  res.argmin_minus = VertexSubset::from_mask(n, best_minus.mask);
  // Recompute from scratch so reported values do not carry walk round-off.
  res.phi_d_min = conductance_set(g, deg, res.argmin_d).phi_d;
  res.phi_plus_min = conductance_set(g, deg, res.argmin_plus).phi_plus;
  res.phi_minus_min = conductance_set(g, deg, res.argmin_minus).phi_minus;
  return res;
}

BinaryMinimum brute_binary_r_min(const DirectedGraph& g, const DegreeProfile& deg, Index limit) {
  const Index n = g.vertex_count();
  if (n > limit || n > 62) throw SizeLimitError("binary oracle: graph has " + std::to_string(n) + " vertices, limit is " +
                                                std::to_string(std::min<Index>(limit, 62)));
  if (n < 2) throw DegenerateError("binary oracle: graph needs at least two vertices");
  Best best;
  Vector x(n);
  const std::uint64_t full = (1ULL << n) - 1;
  for (std::uint64_t mask = 1; mask < full; mask += 2) {
    for (Index i = 0; i < n; ++i) x[i] = (mask >> i) & 1ULL ? 1.0 : -1.0;
    try {
      best.offer(r_obj(g, deg, x), mask);
    } catch (const DegenerateError&) {
    }
  }
  if (!std::isfinite(best.value)) throw DegenerateError("binary oracle: every sign vector is degenerate");
  BinaryMinimum out;
  out.argmin = VertexSubset::from_mask(n, best.mask);
  for (Index i = 0; i < n; ++i) x[i] = out.argmin.contains(i) ? 1.0 : -1.0;
  out.r_min = r_obj(g, deg, x);
  return out;
}

}  // namespace dsicut
