#include "dsicut/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsicut/rng.hpp"

namespace dsicut {

VertexSubset DsbmInstance::first_block() const {
  VertexSubset s(graph.vertex_count());
  for (std::size_t v = 0; v < block.size(); ++v)
    if (block[v] == 0) s.set(static_cast<Index>(v));
  return s;
}

void validate(const DsbmParams& params) {
  auto prob = [](double t) { return t >= 0.0 && t <= 1.0; };
  if (params.n < 1) throw std::invalid_argument("dsbm: block size must be >= 1");
  if (!prob(params.p) || !prob(params.q) || !prob(params.eta))
    throw std::invalid_argument("dsbm: p, q and eta must lie in [0, 1]");
}

DsbmInstance dsbm(const DsbmParams& params) {
  validate(params);
  const Index n = params.n;
  const Index total = 2 * n;
  DsbmInstance inst;
  inst.block.resize(static_cast<std::size_t>(total));
  for (Index v = 0; v < total; ++v) inst.block[static_cast<std::size_t>(v)] = v < n ? 0 : 1;

  std::vector<Arc> arcs;
  std::uint64_t rank = 0;
  for (Index u = 0; u < total; ++u) {
    for (Index v = u + 1; v < total; ++v, ++rank) {
      SplitMix64 pair(SplitMix64::derive(params.seed, rank));
      const double connect = pair.uniform();
      const double orient = pair.uniform();
      const bool cross = (u < n) != (v < n);
      if (!(connect < (cross ? params.q : params.p))) continue;
      // u < v, so in a cross pair u is in C1 and v in C2.
      const bool forward = orient < (cross ? params.eta : 0.5);
      arcs.push_back(forward ? Arc{u, v, 1.0} : Arc{v, u, 1.0});
    }
  }
  inst.graph = DirectedGraph::from_arcs(total, std::move(arcs));
  return inst;
}

double planted_phi_estimate(const DsbmParams& params) {
  validate(params);
  const double n = params.n;
  const double vol = n * ((n - 1.0) * params.p + n * params.q);
  if (!(vol > 0.0)) return 0.0;
  return params.q * n * n * std::min(params.eta, 1.0 - params.eta) / vol;
}

DirectedGraph canonical(FixtureKind kind, Index n) {
  std::vector<Arc> arcs;
  switch (kind) {
    case FixtureKind::c3: return canonical(FixtureKind::dicycle, 3);
    case FixtureKind::p2: return canonical(FixtureKind::dipath, 2);
    case FixtureKind::p3: return canonical(FixtureKind::dipath, 3);
    case FixtureKind::b2: return DirectedGraph::from_arcs(2, {{0, 1, 1.0}, {1, 0, 1.0}});
    case FixtureKind::dicycle:
      if (n < 2) throw std::invalid_argument("dicycle needs n >= 2");
      for (Index i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n, 1.0});
      return DirectedGraph::from_arcs(n, std::move(arcs));
    case FixtureKind::dipath:
      if (n < 2) throw std::invalid_argument("dipath needs n >= 2");
      for (Index i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1, 1.0});
      return DirectedGraph::from_arcs(n, std::move(arcs));
  }
  throw std::invalid_argument("unknown fixture kind");
}

DirectedGraph canonical(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  Index n = 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      n = static_cast<Index>(std::stoi(spec.substr(colon + 1), &used));
      if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad fixture size in '" + spec + "'");
    }
  }
  if (name == "c3") return canonical(FixtureKind::c3);
  if (name == "p2") return canonical(FixtureKind::p2);
  if (name == "p3") return canonical(FixtureKind::p3);
  if (name == "b2") return canonical(FixtureKind::b2);
  if (name == "dicycle") return canonical(FixtureKind::dicycle, n);
  if (name == "dipath") return canonical(FixtureKind::dipath, n);
  throw std::invalid_argument("unknown fixture '" + spec + "'");
}

}  // namespace dsicut
