#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsicut/functionals.hpp"
#include "dsicut/graph.hpp"

namespace dsicut {

/// Relative zero tolerance: |t| <= rel * max(1, |x|_inf).
struct ZeroTolerance {
  double rel = 1e-9;
};

enum class Side : std::int8_t { minus = -1, less = 0, plus = 1 };

struct VertexClasses {
  std::vector<Side> side;        // S+, S-, S< per vertex
  std::vector<char> at_alpha;    // membership in S^alpha
  std::vector<Index> s_plus, s_minus, s_less, s_alpha;
  double alpha = 0.0;            // lower weighted median, an attained value
  double inf_norm = 0.0;
  double tol = 0.0;              // absolute tolerance used for all x tests
};

VertexClasses classify(const DegreeProfile& deg, const Vector& x, ZeroTolerance tol = {});

struct SubgradientBounds {
  Vector p, q;              // d I+ interval is [p - q, p + q]
  Vector l_low, l_high;     // d J interval
  Vector a_low, a_high;     // d N interval
  double A = 0.0, B = 0.0;  // A = sum_{x<alpha} d - sum_{x>alpha} d, B = sum_{x=alpha} d
  double j0 = 0.0;
  bool j_is_zero = false;
  /// Neighbours j with x_i + x_j = 0 (within tolerance), weights symmetrized.
  std::vector<std::vector<Neighbor>> zero_sum;
};

SubgradientBounds bounds(const DirectedGraph& g, const DegreeProfile& deg, const VertexClasses& classes,
                         const Vector& x);

struct BoundaryIndicator {
  Vector b;
  Vector chi;     // +-1
  Vector a_sel;   // chosen element of the d N interval per vertex
  std::vector<Index> v_b;
  std::vector<Index> sigma;      // vertices ordered by (|b_i|, i)
  std::vector<Index> sigma_pos;  // inverse permutation
  double positive_tol = 0.0;
};

BoundaryIndicator boundary_indicator(const DirectedGraph& g, const DegreeProfile& deg,
                                     const SubgradientBounds& bnd, const VertexClasses& classes, double r);

struct SelectedSubgradient {
  Vector s;        // (u + y + 2 r v) / Vol(V)
  Vector u, v, y;  // elements of d I+, d N, d J
  Index i_star = -1;
  Index j_star = -1;  // the fixed S^alpha vertex when |S^alpha| >= 2
};

enum class PivotRule { smallest_id, seeded_random };

struct SelectionOptions {
  PivotRule pivot = PivotRule::smallest_id;
  std::uint64_t seed = 0;
};

/// Consistent subgradient selection.  Returns nullopt when V_b is empty,
/// which certifies that no element of d Q_r(x) yields descent.
std::optional<SelectedSubgradient> select_subgradient(const DirectedGraph& g, const DegreeProfile& deg,
                                                      const SubgradientBounds& bnd,
                                                      const BoundaryIndicator& ind,
                                                      const VertexClasses& classes, double r,
                                                      const SelectionOptions& options = {});

/// classify + bounds + boundary_indicator + select_subgradient in one call.
struct SubgradientStep {
  VertexClasses classes;
  SubgradientBounds bounds;
  BoundaryIndicator indicator;
  std::optional<SelectedSubgradient> selected;
};

SubgradientStep subgradient_step(const DirectedGraph& g, const DegreeProfile& deg, const Vector& x, double r,
                                 const SelectionOptions& options = {}, ZeroTolerance tol = {});

}  // namespace dsicut
