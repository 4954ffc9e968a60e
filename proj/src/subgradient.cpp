#include "dsicut/subgradient.hpp"

#include <algorithm>
#include <numeric>

#include "dsicut/rng.hpp"

namespace dsicut {

namespace {

// Sign(t) = 1 for t >= 0, -1 otherwise.
double sign_pos(double t) { return t >= 0.0 ? 1.0 : -1.0; }

}  // namespace

VertexClasses classify(const DegreeProfile& deg, const Vector& x, ZeroTolerance tol) {
  if (!is_nonconstant(x)) throw DegenerateError("classify: x is constant");
  const Index n = static_cast<Index>(x.size());
  VertexClasses c;
  c.inf_norm = x.cwiseAbs().maxCoeff();
  c.tol = tol.rel * std::max(1.0, c.inf_norm);
  c.alpha = n_med(deg, x).alpha_low;
  c.side.resize(static_cast<std::size_t>(n));
  c.at_alpha.assign(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (std::abs(x[i] - c.inf_norm) <= c.tol) {
      c.side[k] = Side::plus;
      c.s_plus.push_back(i);
    } else if (std::abs(x[i] + c.inf_norm) <= c.tol) {
      c.side[k] = Side::minus;
      c.s_minus.push_back(i);
    } else {
      c.side[k] = Side::less;
      c.s_less.push_back(i);
    }
    if (std::abs(x[i] - c.alpha) <= c.tol) {
      c.at_alpha[k] = 1;
      c.s_alpha.push_back(i);
    }
  }
  return c;
}

SubgradientBounds bounds(const DirectedGraph& g, const DegreeProfile& deg, const VertexClasses& classes,
                         const Vector& x) {
  const Index n = g.vertex_count();
  const double tol = classes.tol;
  SubgradientBounds bd;
  bd.p = Vector::Zero(n);
  bd.q = Vector::Zero(n);
  bd.zero_sum.resize(static_cast<std::size_t>(n));

  for (Index i = 0; i < n; ++i) {
    for (const Neighbor& nb : g.neighbors(i)) {
      const double sum = x[i] + x[nb.vertex];
      if (std::abs(sum) <= tol) {
        bd.q[i] += nb.weight;
        bd.zero_sum[static_cast<std::size_t>(i)].push_back(nb);
      } else {
        bd.p[i] += nb.weight * sign_pos(sum);
      }
    }
  }

  bd.j0 = deg.d_delta.dot(x);
  const double j_tol = tol * std::max(1.0, deg.d_delta.cwiseAbs().sum());
  bd.j_is_zero = std::abs(bd.j0) <= j_tol;
  if (bd.j_is_zero) {
    bd.l_high = deg.d_delta.cwiseAbs();
    bd.l_low = -bd.l_high;
  } else {
    bd.l_low = deg.d_delta * sign_pos(bd.j0);
    bd.l_high = bd.l_low;
  }

  const double alpha = classes.alpha;
  for (Index i = 0; i < n; ++i) {
    if (classes.at_alpha[static_cast<std::size_t>(i)])
      bd.B += deg.d[i];
    else if (x[i] < alpha)
      bd.A += deg.d[i];
    else
      bd.A -= deg.d[i];
  }

  const bool multi = classes.s_alpha.size() >= 2;
  bd.a_low.resize(n);
  bd.a_high.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double d = deg.d[i];
    if (!classes.at_alpha[static_cast<std::size_t>(i)]) {
      bd.a_low[i] = bd.a_high[i] = d * sign_pos(x[i] - alpha);
    } else if (multi) {
      bd.a_low[i] = std::max(bd.A - bd.B + d, -d);
      bd.a_high[i] = std::min(bd.A + bd.B - d, d);
    } else {
      bd.a_low[i] = bd.a_high[i] = bd.A;
    }
  }
  return bd;
}

BoundaryIndicator boundary_indicator(const DirectedGraph& g, const DegreeProfile& deg,
                                     const SubgradientBounds& bnd, const VertexClasses& classes, double r) {
  const Index n = g.vertex_count();
  const bool multi = classes.s_alpha.size() >= 2;
  const bool jz = bnd.j_is_zero;
  BoundaryIndicator ind;
  ind.b.resize(n);
  ind.chi.resize(n);
  ind.a_sel.resize(n);

  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Side side = classes.side[k];
    // Fixed part of the coordinate excluding the N term: p + l (J != 0) or p (J = 0).
    const double base = jz ? bnd.p[i] : bnd.p[i] + bnd.l_low[i];

    double a = bnd.a_low[i];
    if (classes.at_alpha[k] && multi) {
      if (side == Side::plus) {
        a = bnd.a_low[i];
      } else if (side == Side::minus) {
        a = bnd.a_high[i];
      } else {
        const double lo = std::abs(base + 2.0 * r * bnd.a_low[i]);
        const double hi = std::abs(base + 2.0 * r * bnd.a_high[i]);
        a = hi > lo ? bnd.a_high[i] : bnd.a_low[i];
      }
    }
    ind.a_sel[i] = a;

    double chi = 0.0;
    switch (side) {
      case Side::plus: chi = -1.0; break;
      case Side::minus: chi = 1.0; break;
      case Side::less: chi = sign_pos(base + 2.0 * r * a); break;
    }
    ind.chi[i] = chi;

    const double j_part = jz ? chi * std::abs(deg.d_delta[i]) : bnd.l_low[i];
    ind.b[i] = bnd.p[i] + j_part + 2.0 * r * a + chi * bnd.q[i];
  }

  ind.sigma.resize(static_cast<std::size_t>(n));
  std::iota(ind.sigma.begin(), ind.sigma.end(), Index{0});
  std::stable_sort(ind.sigma.begin(), ind.sigma.end(),
                   [&](Index a, Index b) { return std::abs(ind.b[a]) < std::abs(ind.b[b]); });
  ind.sigma_pos.resize(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) ind.sigma_pos[static_cast<std::size_t>(ind.sigma[static_cast<std::size_t>(k)])] = k;

  const double scale = std::max(1.0, deg.d.maxCoeff()) * (1.0 + r);
  ind.positive_tol = 1e-9 * scale;
  double best = ind.positive_tol;
  for (Index i = 0; i < n; ++i) best = std::max(best, ind.b[i] * ind.chi[i]);
  if (best > ind.positive_tol) {
    for (Index i = 0; i < n; ++i)
      if (ind.b[i] * ind.chi[i] >= best - ind.positive_tol) ind.v_b.push_back(i);
  }
  return ind;
}

std::optional<SelectedSubgradient> select_subgradient(const DirectedGraph& g, const DegreeProfile& deg,
                                                      const SubgradientBounds& bnd,
                                                      const BoundaryIndicator& ind,
                                                      const VertexClasses& classes, double r,
                                                      const SelectionOptions& options) {
  if (ind.v_b.empty()) return std::nullopt;
  const Index n = g.vertex_count();

  SelectedSubgradient sel;
  if (options.pivot == PivotRule::seeded_random) {
    SplitMix64 rng(options.seed);
    sel.i_star = ind.v_b[static_cast<std::size_t>(rng.below(ind.v_b.size()))];
  } else {
    sel.i_star = ind.v_b.front();
  }
  const Index pivot = sel.i_star;
  const double chi_pivot = ind.chi[pivot];

  // u: every zero-sum pair {i, j} gets one scalar z in [-1, 1] applied to both
  // endpoints; pairs touching the pivot use its chi, others use chi of the
  // endpoint later in sigma.
  sel.u = bnd.p;
  for (Index i = 0; i < n; ++i) {
    for (const Neighbor& nb : bnd.zero_sum[static_cast<std::size_t>(i)]) {
      const Index j = nb.vertex;
      double z;
      if (i == pivot || j == pivot) {
        z = chi_pivot;
      } else {
        const Index later = ind.sigma_pos[static_cast<std::size_t>(i)] > ind.sigma_pos[static_cast<std::size_t>(j)] ? i : j;
        z = ind.chi[later];
      }
      sel.u[i] += nb.weight * z;
    }
  }

  // v: element of d N with sum over S^alpha equal to A.
  sel.v.resize(n);
  for (Index i = 0; i < n; ++i) sel.v[i] = ind.a_sel[i];
  if (classes.s_alpha.size() <= 1) {
    for (Index i : classes.s_alpha) sel.v[i] = bnd.A;
  } else {
    Index j_star = -1;
    if (classes.at_alpha[static_cast<std::size_t>(pivot)]) {
      j_star = pivot;
    } else {
      for (Index t : classes.s_alpha)
        if (j_star < 0 || ind.sigma_pos[static_cast<std::size_t>(t)] > ind.sigma_pos[static_cast<std::size_t>(j_star)])
          j_star = t;
    }
    sel.j_star = j_star;
    const double rest = bnd.B - deg.d[j_star];
    const double ratio = rest > 0.0 ? (bnd.A - ind.a_sel[j_star]) / rest : 0.0;
    for (Index i : classes.s_alpha)
      if (i != j_star) sel.v[i] = ratio * deg.d[i];
  }

  // y: element of d J.  When J = 0 the subdifferential is the segment
  // t * d_delta, t in [-1, 1]; t is chosen so that y_pivot = chi_pivot |d_delta_pivot|.
  if (bnd.j_is_zero) {
    const double t = chi_pivot * sign_pos(deg.d_delta[pivot]);
    sel.y = t * deg.d_delta;
  } else {
    sel.y = sign_pos(bnd.j0) * deg.d_delta;
  }

  sel.s = (sel.u + sel.y + 2.0 * r * sel.v) / deg.vol_total;
  return sel;
}

SubgradientStep subgradient_step(const DirectedGraph& g, const DegreeProfile& deg, const Vector& x, double r,
                                 const SelectionOptions& options, ZeroTolerance tol) {
  SubgradientStep step;
  step.classes = classify(deg, x, tol);
  step.bounds = bounds(g, deg, step.classes, x);
  step.indicator = boundary_indicator(g, deg, step.bounds, step.classes, r);
  step.selected = select_subgradient(g, deg, step.bounds, step.indicator, step.classes, r, options);
  return step;
}

}  // namespace dsicut
