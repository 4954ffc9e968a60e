#include "dsicut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsicut {

namespace {

void build_csr(Index n, const std::vector<Arc>& arcs, bool by_tail,
               std::vector<std::size_t>& offsets, std::vector<std::size_t>& index) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Arc& a : arcs) ++offsets[static_cast<std::size_t>(by_tail ? a.tail : a.head) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  index.resize(arcs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    const auto v = static_cast<std::size_t>(by_tail ? arcs[e].tail : arcs[e].head);
    index[cursor[v]++] = e;
  }
}

}  // namespace

DirectedGraph DirectedGraph::from_arcs(Index vertex_count, std::vector<Arc> arcs,
                                       std::vector<std::string> labels) {
  if (vertex_count < 0) throw DataError("negative vertex count");
  DirectedGraph g;
  g.vertex_count_ = vertex_count;

  std::vector<Arc> kept;
  kept.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.head < 0 || a.tail >= vertex_count || a.head >= vertex_count)
      throw DataError("arc endpoint out of range");
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
      throw DataError("arc weight must be finite and nonnegative");
    if (a.tail == a.head) {
      ++g.stats_.self_loops_dropped;
      continue;
    }
    if (a.weight == 0.0) {
      ++g.stats_.zero_weight_dropped;
      continue;
    }
    kept.push_back(a);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Arc& a, const Arc& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  for (const Arc& a : kept) {
    if (!g.arcs_.empty() && g.arcs_.back().tail == a.tail && g.arcs_.back().head == a.head) {
      g.arcs_.back().weight += a.weight;
      ++g.stats_.parallel_merged;
    } else {
      g.arcs_.push_back(a);
    }
  }
  for (const Arc& a : g.arcs_) g.total_weight_ += a.weight;

  build_csr(vertex_count, g.arcs_, true, g.out_offsets_, g.out_index_);
  build_csr(vertex_count, g.arcs_, false, g.in_offsets_, g.in_index_);

  // Symmetrized neighbour lists: merge out- and in-lists, both sorted by the other endpoint.
  const auto n = static_cast<std::size_t>(vertex_count);
  g.sym_offsets_.assign(n + 1, 0);
  std::vector<std::vector<Neighbor>> sym(n);
  for (const Arc& a : g.arcs_) {
    sym[static_cast<std::size_t>(a.tail)].push_back({a.head, a.weight});
    sym[static_cast<std::size_t>(a.head)].push_back({a.tail, a.weight});
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = sym[v];
    std::stable_sort(list.begin(), list.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    std::vector<Neighbor> merged;
    for (const Neighbor& nb : list) {
      if (!merged.empty() && merged.back().vertex == nb.vertex)
        merged.back().weight += nb.weight;
      else
        merged.push_back(nb);
    }
    g.sym_offsets_[v + 1] = g.sym_offsets_[v] + merged.size();
    g.sym_.insert(g.sym_.end(), merged.begin(), merged.end());
  }

  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v + 1));
  }
  if (labels.size() != n) throw DataError("label count does not match vertex count");
  g.labels_ = std::move(labels);
  return g;
}

std::span<const std::size_t> DirectedGraph::out_arcs(Index v) const {
  const auto i = static_cast<std::size_t>(v);
  return {out_index_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const std::size_t> DirectedGraph::in_arcs(Index v) const {
  const auto i = static_cast<std::size_t>(v);
  return {in_index_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

std::span<const Neighbor> DirectedGraph::neighbors(Index v) const {
  const auto i = static_cast<std::size_t>(v);
  return {sym_.data() + sym_offsets_[i], sym_offsets_[i + 1] - sym_offsets_[i]};
}

DegreeProfile degrees(const DirectedGraph& g) {
  const Index n = g.vertex_count();
  DegreeProfile p;
  p.d_out = Vector::Zero(n);
  p.d_in = Vector::Zero(n);
  for (const Arc& a : g.arcs()) {
    p.d_out[a.tail] += a.weight;
    p.d_in[a.head] += a.weight;
  }
  p.d = p.d_out + p.d_in;
  p.d_delta = p.d_out - p.d_in;
  p.vol_total = 2.0 * g.total_weight();
  return p;
}

// ---------------------------------------------------------------------------

VertexSubset VertexSubset::from_members(Index vertex_count, std::span<const Index> members) {
  VertexSubset s(vertex_count);
  for (Index v : members) {
    if (v < 0 || v >= vertex_count) throw DataError("subset member out of range");
    s.set(v);
  }
  return s;
}

VertexSubset VertexSubset::from_mask(Index vertex_count, std::uint64_t mask) {
  VertexSubset s(vertex_count);
  for (Index v = 0; v < vertex_count; ++v) s.set(v, (mask >> v) & 1U);
  return s;
}

Index VertexSubset::size() const {
  return static_cast<Index>(std::count(member_.begin(), member_.end(), char{1}));
}

VertexSubset VertexSubset::complement() const {
  VertexSubset c(vertex_count());
  for (Index v = 0; v < vertex_count(); ++v) c.set(v, !contains(v));
  return c;
}

std::vector<Index> VertexSubset::members() const {
  std::vector<Index> out;
  for (Index v = 0; v < vertex_count(); ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

Vector VertexSubset::indicator() const {
  Vector x(vertex_count());
  for (Index v = 0; v < vertex_count(); ++v) x[v] = contains(v) ? 1.0 : -1.0;
  return x;
}

CutValues cut_values(const DirectedGraph& g, const VertexSubset& s) {
  return cut_values(g, degrees(g), s);
}

CutValues cut_values(const DirectedGraph& g, const DegreeProfile& deg, const VertexSubset& s) {
  if (s.vertex_count() != g.vertex_count()) throw DataError("subset size does not match graph");
  if (!s.is_proper()) throw DegenerateError("cut side must be a nonempty proper subset");
  CutValues c;
  for (const Arc& a : g.arcs()) {
    const bool t = s.contains(a.tail), h = s.contains(a.head);
    if (t && !h) c.cut_plus += a.weight;
    if (!t && h) c.cut_minus += a.weight;
  }
  for (Index v = 0; v < g.vertex_count(); ++v) (s.contains(v) ? c.vol_s : c.vol_comp) += deg.d[v];
  return c;
}

Conductance conductance_from_cut(const CutValues& c) {
  const double denom = std::min(c.vol_s, c.vol_comp);
  if (!(denom > 0.0)) throw DegenerateError("min(Vol(S), Vol(S^c)) is zero");
  return {std::min(c.cut_plus, c.cut_minus) / denom, c.cut_plus / denom, c.cut_minus / denom};
}

Conductance conductance_set(const DirectedGraph& g, const VertexSubset& s) {
  return conductance_from_cut(cut_values(g, s));
}

Conductance conductance_set(const DirectedGraph& g, const DegreeProfile& deg, const VertexSubset& s) {
  return conductance_from_cut(cut_values(g, deg, s));
}

// ---------------------------------------------------------------------------

std::vector<Index> weak_components(const DirectedGraph& g, Index* component_count) {
  const Index n = g.vertex_count();
  std::vector<Index> comp(static_cast<std::size_t>(n), -1);
  std::vector<Index> stack;
  Index next = 0;
  for (Index root = 0; root < n; ++root) {
    if (comp[static_cast<std::size_t>(root)] >= 0) continue;
    comp[static_cast<std::size_t>(root)] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : g.neighbors(v)) {
        auto& c = comp[static_cast<std::size_t>(nb.vertex)];
        if (c < 0) {
          c = next;
          stack.push_back(nb.vertex);
        }
      }
    }
    ++next;
  }
  if (component_count) *component_count = next;
  return comp;
}

Subgraph induced_subgraph(const DirectedGraph& g, std::span<const Index> vertices) {
  std::vector<Index> remap(static_cast<std::size_t>(g.vertex_count()), -1);
  Subgraph sub;
  std::vector<std::string> labels;
  for (Index v : vertices) {
    remap[static_cast<std::size_t>(v)] = static_cast<Index>(sub.original_id.size());
    sub.original_id.push_back(v);
    labels.push_back(g.label(v));
  }
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    const Index t = remap[static_cast<std::size_t>(a.tail)], h = remap[static_cast<std::size_t>(a.head)];
    if (t >= 0 && h >= 0) arcs.push_back({t, h, a.weight});
  }
  sub.graph = DirectedGraph::from_arcs(static_cast<Index>(sub.original_id.size()), std::move(arcs),
                                       std::move(labels));
  return sub;
}

Subgraph largest_weak_component(const DirectedGraph& g) {
  Index count = 0;
  const auto comp = weak_components(g, &count);
  std::vector<Index> size(static_cast<std::size_t>(count), 0);
  for (Index c : comp) ++size[static_cast<std::size_t>(c)];
  // Components are numbered in order of their smallest vertex, so the first
  // maximum is the tie-break winner.
  const auto best = static_cast<Index>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<Index> members;
  for (Index v = 0; v < g.vertex_count(); ++v)
    if (comp[static_cast<std::size_t>(v)] == best) members.push_back(v);
  return induced_subgraph(g, members);
}

}  // namespace dsicut
