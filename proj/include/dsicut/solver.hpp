#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsicut/graph.hpp"
#include "dsicut/subgradient.hpp"

namespace dsicut {

enum class InitStrategy { spectral, sweep, imbalance, random, user };

enum class Certificate {
  vb_empty,        // no boundary vertex admits descent
  no_descent,      // the subproblem step did not decrease r
  max_iters,       // iteration budget T exhausted
  component_cut,   // weakly disconnected input, zero-conductance component returned
};

const char* to_string(Certificate c);
const char* to_string(InitStrategy s);
InitStrategy parse_init_strategy(const std::string& name);

struct SolverConfig {
  int max_iters = 1000;  // T
  int restarts = 4;
  InitStrategy init = InitStrategy::spectral;
  std::uint64_t seed = 0;
  std::optional<Vector> user_x;
  ZeroTolerance zero_tol{};
  double descent_rel = 1e-10;  // eps_dec = descent_rel * max(1, r^1)
  PivotRule pivot = PivotRule::smallest_id;
  int threads = 1;
  int spectral_max_iters = 5000;
  double spectral_tol = 1e-8;
};

struct SolveReport {
  double best_r = 0.0;
  Vector best_x;
  VertexSubset best_set;
  std::vector<double> r_trace;
  int iterations = 0;
  Certificate certificate = Certificate::max_iters;
  bool is_flip_local_opt = false;
  double wall_time = 0.0;  // seconds
  std::string initialization;  // e.g. "sweep(symmetrized-spectral)"
  int restart_index = 0;
  Index zero_entries = 0;  // entries of best_x equal to 0 (observed statistic)
};

/// Minimizer of |x|_inf - <x, s> over the unit 1-norm sphere, computed in
/// closed form.  l_value is the attained minimum.
struct SubproblemResult {
  Vector x;
  double l_value = 0.0;
};

SubproblemResult subproblem_argmin(const Vector& s);

/// Minimum-conductance threshold set {i : x_i > t} over the distinct values
/// of x.  Ties go to the smaller set, then to the lexicographically smaller
/// member list.
struct Partition {
  VertexSubset set;
  double phi = 0.0;
};

Partition extract_partition(const DirectedGraph& g, const DegreeProfile& deg, const Vector& x);
Partition extract_partition(const DirectedGraph& g, const Vector& x);

/// True iff no single sign flip of the +-1 indicator of s decreases r.
bool verify_local_opt(const DirectedGraph& g, const DegreeProfile& deg, const VertexSubset& s);
bool verify_local_opt(const DirectedGraph& g, const VertexSubset& s);

/// Zero-conductance cut when at least two weak components carry arcs.
std::optional<Partition> component_cut(const DirectedGraph& g, const DegreeProfile& deg);

struct IterationRecord {
  int k = 0;                    // 1-based iteration
  const Vector* x = nullptr;    // current iterate x^k
  double r = 0.0;               // r(x^k)
  const SubgradientStep* step = nullptr;
  const Vector* x_next = nullptr;  // null when the step stopped at V_b = {}
  double r_next = 0.0;
  double l_value = 0.0;
  bool accepted = false;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

/// One DSI run from x1.
SolveReport dsi_run(const DirectedGraph& g, const DegreeProfile& deg, const Vector& x1, const SolverConfig& cfg,
                    const IterationObserver& observer = {});

/// Multi-start DSI with spectral, sweep-seeded, degree-imbalance and random
/// initial vectors.
SolveReport dsi_solve(const DirectedGraph& g, const SolverConfig& cfg = {});

/// Initial vectors used by dsi_solve, in restart order, with a label each.
struct InitialVector {
  Vector x;
  std::string label;
};

std::vector<InitialVector> initial_vectors(const DirectedGraph& g, const SolverConfig& cfg);

}  // namespace dsicut
