#include "dsicut/functionals.hpp"

#include <stdexcept>

namespace dsicut {

namespace {

std::uint64_t full_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::uint64_t above(const Vector& x, double t) {
  std::uint64_t m = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] > t) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

double lovasz_extension(const SetFunction& f, const Vector& x, LovaszMode mode) {
  if (x.size() != f.n) throw std::invalid_argument("lovasz_extension: ground set size mismatch");
  if (f.n > 63) throw std::invalid_argument("lovasz_extension: ground set too large");
  const int n = f.n;
  if (n == 0) return 0.0;

  if (mode == LovaszMode::sum) {
    std::vector<Index> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), Index{0});
    std::stable_sort(sigma.begin(), sigma.end(), [&](Index a, Index b) { return x[a] < x[b]; });
    // i = 0 term: (x_sigma(1) - x_0) f(V) with x_0 := 0.
    double value = x[sigma[0]] * f.eval(full_mask(n));
    for (int i = 1; i < n; ++i) {
      const double lo = x[sigma[static_cast<std::size_t>(i - 1)]];
      const double hi = x[sigma[static_cast<std::size_t>(i)]];
      value += (hi - lo) * f.eval(above(x, lo));
    }
    return value;
  }

  std::vector<double> breaks(x.data(), x.data() + n);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double value = f.eval(full_mask(n)) * breaks.front();
  // f({x > t}) is constant on each open interval between consecutive breakpoints.
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
    value += (breaks[k + 1] - breaks[k]) * f.eval(above(x, breaks[k]));
  return value;
}

namespace {

struct MaskCut {
  double plus = 0.0, minus = 0.0;
};

MaskCut mask_cut(const DirectedGraph& g, std::uint64_t mask) {
  MaskCut c;
  for (const Arc& a : g.arcs()) {
    const bool t = (mask >> a.tail) & 1U, h = (mask >> a.head) & 1U;
    if (t && !h) c.plus += a.weight;
    if (!t && h) c.minus += a.weight;
  }
  return c;
}

void require_small(const DirectedGraph& g) {
  if (g.vertex_count() > 63) throw SizeLimitError("set functions are limited to 63 vertices");
}

}  // namespace

SetFunction cut_plus_function(const DirectedGraph& g) {
  require_small(g);
  return {g.vertex_count(), [&g](std::uint64_t m) { return mask_cut(g, m).plus; }};
}

SetFunction cut_minus_function(const DirectedGraph& g) {
  require_small(g);
  return {g.vertex_count(), [&g](std::uint64_t m) { return mask_cut(g, m).minus; }};
}

SetFunction min_cut_function(const DirectedGraph& g) {
  require_small(g);
  return {g.vertex_count(), [&g](std::uint64_t m) {
            const auto c = mask_cut(g, m);
            return std::min(c.plus, c.minus);
          }};
}

SetFunction min_volume_function(const DirectedGraph& g) {
  require_small(g);
  return {g.vertex_count(), [d = degrees(g).d](std::uint64_t m) {
            double in = 0.0, out = 0.0;
            for (Index v = 0; v < d.size(); ++v) ((m >> v) & 1U ? in : out) += d[v];
            return std::min(in, out);
          }};
}

}  // namespace dsicut
