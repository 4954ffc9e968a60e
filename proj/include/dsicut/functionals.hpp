#pragma once

// Continuous functionals of the digraph conductance reformulation.
//
//   r(x)   = (Vol(V) |x|_inf - I+(x) - J(x)) / (2 N(x))
//   Q_r(x) = (I+(x) + J(x) + 2 r N(x)) / Vol(V)
//
// with I+(x) = sum_{i->j} w_ij |x_i + x_j|, J(x) = |<d_delta, x>| and
// N(x) = min_c sum_i d_i |x_i - c|.  All functionals accept any Eigen
// column-vector expression.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "dsicut/graph.hpp"

namespace dsicut {

template <typename Scalar>
struct ArcSums {
  Scalar i_plus{0};  // sum w |x_i + x_j|
  Scalar i_abs{0};   // sum w |x_i - x_j|
};

template <typename Scalar>
struct JTerms {
  Scalar j0{0};  // signed: sum_i d_delta_i x_i
  Scalar j{0};   // |j0|
};

template <typename Scalar>
struct MedianResult {
  Scalar alpha_low{0};
  Scalar alpha_high{0};
  Scalar n_value{0};
};

/// max - min > 1e-12 * max(1, |x|_inf)
template <typename Derived>
bool is_nonconstant(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() < 2) return false;
  const Scalar spread = x.maxCoeff() - x.minCoeff();
  return spread > Scalar(1e-12) * std::max(Scalar(1), x.cwiseAbs().maxCoeff());
}

template <typename Derived>
ArcSums<typename Derived::Scalar> arc_sums(const DirectedGraph& g, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  ArcSums<Scalar> s;
  for (const Arc& a : g.arcs()) {
    const Scalar w(a.weight);
    s.i_plus += w * std::abs(x[a.tail] + x[a.head]);
    s.i_abs += w * std::abs(x[a.tail] - x[a.head]);
  }
  return s;
}

template <typename Derived>
typename Derived::Scalar i_plus(const DirectedGraph& g, const Eigen::MatrixBase<Derived>& x) {
  return arc_sums(g, x).i_plus;
}

template <typename Derived>
JTerms<typename Derived::Scalar> j_terms(const DegreeProfile& deg, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  JTerms<Scalar> t;
  t.j0 = deg.d_delta.template cast<Scalar>().dot(x);
  t.j = std::abs(t.j0);
  return t;
}

/// Weighted median interval of x under weights d and the minimal value of
/// sum_i d_i |x_i - c|.  alpha_low is the lower weighted median (an attained
/// value of x).
template <typename Derived>
MedianResult<typename Derived::Scalar> n_med(const Eigen::VectorXd& weights, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });

  const Scalar total = weights.template cast<Scalar>().sum();
  const Scalar half = total / Scalar(2);
  const Scalar eps = Scalar(1e-12) * std::max(Scalar(1), total);

  MedianResult<Scalar> m;
  Scalar below_or_at(0);
  std::size_t low_rank = n - 1;
  for (std::size_t k = 0; k < n; ++k) {
    below_or_at += Scalar(weights[order[k]]);
    if (below_or_at >= half - eps) {
      low_rank = k;
      break;
    }
  }
  m.alpha_low = x[order[low_rank]];
  Scalar at_or_above(0);
  std::size_t high_rank = 0;
  for (std::size_t k = n; k-- > 0;) {
    at_or_above += Scalar(weights[order[k]]);
    if (at_or_above >= half - eps) {
      high_rank = k;
      break;
    }
  }
  m.alpha_high = std::max(m.alpha_low, Scalar(x[order[high_rank]]));
  for (std::size_t i = 0; i < n; ++i) m.n_value += Scalar(weights[static_cast<Index>(i)]) * std::abs(x[static_cast<Index>(i)] - m.alpha_low);
  return m;
}

template <typename Derived>
MedianResult<typename Derived::Scalar> n_med(const DegreeProfile& deg, const Eigen::MatrixBase<Derived>& x) {
  return n_med(deg.d, x);
}

/// Ratio objective r(x).  Throws DegenerateError for (numerically) constant x
/// or when N(x) vanishes.
template <typename Derived>
typename Derived::Scalar r_obj(const DirectedGraph& g, const DegreeProfile& deg,
                               const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (!is_nonconstant(x)) throw DegenerateError("r(x) is undefined for constant x");
  const Scalar n_val = n_med(deg, x).n_value;
  if (!(n_val > Scalar(0))) throw DegenerateError("N(x) = 0");
  const Scalar inf = x.cwiseAbs().maxCoeff();
  const Scalar num = Scalar(deg.vol_total) * inf - i_plus(g, x) - j_terms(deg, x).j;
  return num / (Scalar(2) * n_val);
}

template <typename Derived>
typename Derived::Scalar q_r(const DirectedGraph& g, const DegreeProfile& deg,
                             const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar r) {
  using Scalar = typename Derived::Scalar;
  const Scalar num = i_plus(g, x) + j_terms(deg, x).j + Scalar(2) * r * n_med(deg, x).n_value;
  return num / Scalar(deg.vol_total);
}

/// Single-directed variant (Vol |x|_inf - I+ - sign * J0) / (2N).  With
/// sign = +1 this reproduces the in-conductance at +-1 indicators and with
/// sign = -1 the out-conductance.
template <typename Derived>
typename Derived::Scalar single_directed_ratio(const DirectedGraph& g, const DegreeProfile& deg,
                                               const Eigen::MatrixBase<Derived>& x, int sign) {
  using Scalar = typename Derived::Scalar;
  if (!is_nonconstant(x)) throw DegenerateError("ratio is undefined for constant x");
  const Scalar inf = x.cwiseAbs().maxCoeff();
  const Scalar num = Scalar(deg.vol_total) * inf - i_plus(g, x) - Scalar(sign) * j_terms(deg, x).j0;
  return num / (Scalar(2) * n_med(deg, x).n_value);
}

/// F(x) = (Vol |x|_inf - I+ - J) / 2, the numerator of r.
template <typename Derived>
typename Derived::Scalar upper_cut_bound(const DirectedGraph& g, const DegreeProfile& deg,
                                         const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar inf = x.cwiseAbs().maxCoeff();
  return (Scalar(deg.vol_total) * inf - i_plus(g, x) - j_terms(deg, x).j) / Scalar(2);
}

/// G(x) = (I - J) / 2 = min of the Lovász extensions of cut+ and cut-.
template <typename Derived>
typename Derived::Scalar min_cut_extension(const DirectedGraph& g, const DegreeProfile& deg,
                                           const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return (arc_sums(g, x).i_abs - j_terms(deg, x).j) / Scalar(2);
}

// ---------------------------------------------------------------------------
// Generic Lovász extension, for small ground sets (n <= 63).

/// Set function on {0..n-1}; subsets are bitmasks with bit i for element i.
struct SetFunction {
  int n = 0;
  std::function<double(std::uint64_t)> eval;
};

enum class LovaszMode { sum, integral };

/// Sum mode: the sorted-threshold formula with x_0 := 0.  Integral mode:
/// integral over t of f({x > t}) plus f(V) * min x, integrated exactly over
/// the breakpoints of x.
double lovasz_extension(const SetFunction& f, const Vector& x, LovaszMode mode = LovaszMode::sum);

SetFunction cut_plus_function(const DirectedGraph& g);
SetFunction cut_minus_function(const DirectedGraph& g);
SetFunction min_cut_function(const DirectedGraph& g);
SetFunction min_volume_function(const DirectedGraph& g);

}  // namespace dsicut
