#include "dsicut/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dsicut/baselines.hpp"
#include "dsicut/functionals.hpp"
#include "dsicut/rng.hpp"

namespace dsicut {

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::vb_empty: return "stop-by-V_b-empty";
    case Certificate::no_descent: return "stop-by-no-descent";
    case Certificate::max_iters: return "stop-by-T";
    case Certificate::component_cut: return "component-cut";
  }
  return "unknown";
}

const char* to_string(InitStrategy s) {
  switch (s) {
    case InitStrategy::spectral: return "spectral";
    case InitStrategy::sweep: return "sweep";
    case InitStrategy::imbalance: return "imbalance";
    case InitStrategy::random: return "random";
    case InitStrategy::user: return "user";
  }
  return "unknown";
}

InitStrategy parse_init_strategy(const std::string& name) {
  if (name == "spectral") return InitStrategy::spectral;
  if (name == "sweep") return InitStrategy::sweep;
  if (name == "imbalance") return InitStrategy::imbalance;
  if (name == "random") return InitStrategy::random;
  if (name == "user") return InitStrategy::user;
  throw std::invalid_argument("unknown init strategy '" + name + "'");
}

// ---------------------------------------------------------------------------

SubproblemResult subproblem_argmin(const Vector& s) {
  const Index n = static_cast<Index>(s.size());
  if (n == 0) throw std::invalid_argument("subproblem_argmin: empty vector");
  const auto sign = [](double t) { return t >= 0.0 ? 1.0 : -1.0; };
  SubproblemResult res;

  const double norm1 = s.lpNorm<1>();
  if (!(norm1 > 1.0)) {
    res.x.resize(n);
    for (Index i = 0; i < n; ++i) res.x[i] = sign(s[i]) / n;
    res.l_value = res.x.cwiseAbs().maxCoeff() - res.x.dot(s);
    return res;
  }

  std::vector<Index> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), Index{0});
  std::stable_sort(pi.begin(), pi.end(), [&](Index a, Index b) { return std::abs(s[a]) > std::abs(s[b]); });
  // mag[k] = |s_pi(k+1)|, with mag[n] = 0.
  std::vector<double> mag(static_cast<std::size_t>(n) + 1, 0.0);
  for (Index k = 0; k < n; ++k) mag[static_cast<std::size_t>(k)] = std::abs(s[pi[static_cast<std::size_t>(k)]]);

  // A[m] = sum_{j <= m} (mag_j - mag_{m+1}), m = 0..n (1-based ranks).
  std::vector<double> A(static_cast<std::size_t>(n) + 1, 0.0);
  double prefix = 0.0;
  for (Index m = 1; m <= n; ++m) {
    prefix += mag[static_cast<std::size_t>(m - 1)];
    A[static_cast<std::size_t>(m)] = prefix - m * mag[static_cast<std::size_t>(m)];
  }
  Index m0 = n;
  for (Index m = 1; m <= n; ++m) {
    if (A[static_cast<std::size_t>(m)] > 1.0) {
      m0 = m;
      break;
    }
  }
  Index m1 = 1;
  for (Index m = n; m >= 1; --m) {
    if (A[static_cast<std::size_t>(m - 1)] < 1.0) {
      m1 = m;
      break;
    }
  }
  // Ranks <= m1 get z = 1, ranks in the degenerate band (m1, m0] also get 1.
  const Index active = std::max(m0, m1);
  res.x = Vector::Zero(n);
  for (Index k = 0; k < active; ++k) {
    const Index i = pi[static_cast<std::size_t>(k)];
    res.x[i] = sign(s[i]) / active;
  }
  res.l_value = res.x.cwiseAbs().maxCoeff() - res.x.dot(s);
  return res;
}

// ---------------------------------------------------------------------------

Partition extract_partition(const DirectedGraph& g, const DegreeProfile& deg, const Vector& x) {
  const Index n = g.vertex_count();
  if (x.size() != n) throw DataError("extract_partition: vector size mismatch");
  if (!is_nonconstant(x)) throw DegenerateError("extract_partition: x is constant");

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] > x[b]; });

  std::vector<char> in(static_cast<std::size_t>(n), 0);
  double cut_plus = 0.0, cut_minus = 0.0, vol_s = 0.0;
  double best = std::numeric_limits<double>::infinity();
  Index best_len = -1;
  for (Index k = 0; k + 1 < n; ++k) {
    const Index u = order[static_cast<std::size_t>(k)];
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
    // Only thresholds strictly between distinct values define a set {x > t}.
    if (x[order[static_cast<std::size_t>(k + 1)]] == x[u]) continue;
    const double denom = std::min(vol_s, deg.vol_total - vol_s);
    if (!(denom > 0.0)) continue;
    const double phi = std::max(0.0, std::min(cut_plus, cut_minus)) / denom;
    if (phi < best) {
      best = phi;
      best_len = k + 1;
    }
  }
  if (best_len < 0) throw DegenerateError("extract_partition: no threshold set has positive volume on both sides");
  Partition p;
  p.set = VertexSubset(n);
  for (Index k = 0; k < best_len; ++k) p.set.set(order[static_cast<std::size_t>(k)]);
  p.phi = conductance_set(g, deg, p.set).phi_d;
  return p;
}

Partition extract_partition(const DirectedGraph& g, const Vector& x) {
  return extract_partition(g, degrees(g), x);
}

bool verify_local_opt(const DirectedGraph& g, const DegreeProfile& deg, const VertexSubset& s) {
  if (!s.is_proper()) throw DegenerateError("verify_local_opt: subset must be nonempty and proper");
  Vector x = s.indicator();
  const double r0 = r_obj(g, deg, x);
  for (Index i = 0; i < x.size(); ++i) {
    x[i] = -x[i];
    if (is_nonconstant(x)) {
      try {
        if (r_obj(g, deg, x) < r0 - 1e-12) return false;
      } catch (const DegenerateError&) {
        // N(R_i x) = 0: the flip isolates zero-volume vertices and is not a cut.
      }
    }
    x[i] = -x[i];
  }
  return true;
}

bool verify_local_opt(const DirectedGraph& g, const VertexSubset& s) { return verify_local_opt(g, degrees(g), s); }

std::optional<Partition> component_cut(const DirectedGraph& g, const DegreeProfile& deg) {
  Index count = 0;
  const auto comp = weak_components(g, &count);
  if (count < 2) return std::nullopt;
  std::vector<double> vol(static_cast<std::size_t>(count), 0.0);
  for (Index v = 0; v < g.vertex_count(); ++v) vol[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] += deg.d[v];
  Index first = -1, carrying = 0;
  for (Index c = 0; c < count; ++c) {
    if (vol[static_cast<std::size_t>(c)] > 0.0) {
      if (first < 0) first = c;
      ++carrying;
    }
  }
  if (carrying < 2) return std::nullopt;
  Partition p;
  p.set = VertexSubset(g.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v)
    if (comp[static_cast<std::size_t>(v)] == first) p.set.set(v);
  p.phi = conductance_set(g, deg, p.set).phi_d;
  return p;
}

// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void finish_report(const DirectedGraph& g, const DegreeProfile& deg, SolveReport& rep) {
  const Partition p = extract_partition(g, deg, rep.best_x);
  rep.best_set = p.set;
  rep.best_r = p.phi;
  rep.is_flip_local_opt = verify_local_opt(g, deg, rep.best_set);
  const double inf = rep.best_x.cwiseAbs().maxCoeff();
  rep.zero_entries = 0;
  for (Index i = 0; i < rep.best_x.size(); ++i)
    if (std::abs(rep.best_x[i]) <= 1e-12 * inf) ++rep.zero_entries;
}

SolveReport component_report(const Partition& p) {
  SolveReport rep;
  rep.best_set = p.set;
  rep.best_r = p.phi;
  rep.best_x = p.set.indicator();
  rep.r_trace = {p.phi};
  rep.iterations = 0;
  rep.certificate = Certificate::component_cut;
  rep.is_flip_local_opt = true;
  rep.initialization = "component-precheck";
  return rep;
}

Vector random_signs(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = (rng() >> 63) ? 1.0 : -1.0;
  if (!is_nonconstant(x)) x[static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)))] *= -1.0;
  return x;
}

}  // namespace

SolveReport dsi_run(const DirectedGraph& g, const DegreeProfile& deg, const Vector& x1, const SolverConfig& cfg,
                    const IterationObserver& observer) {
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (x1.size() != g.vertex_count()) throw DataError("initial vector size mismatch");
  if (!is_nonconstant(x1)) throw DegenerateError("dsi_run: initial vector is constant");
  const auto t0 = Clock::now();
  if (auto cut = component_cut(g, deg)) {
    SolveReport rep = component_report(*cut);
    rep.wall_time = seconds_since(t0);
    return rep;
  }

  SolveReport rep;
  Vector x = x1;
  double r = r_obj(g, deg, x);
  const double eps_dec = cfg.descent_rel * std::max(1.0, r);
  rep.best_x = x;
  rep.r_trace.push_back(r);
  rep.certificate = Certificate::max_iters;

  int k = 1;
  while (k <= cfg.max_iters) {
    SelectionOptions sel_opts{cfg.pivot, SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(k))};
    const SubgradientStep step = subgradient_step(g, deg, x, r, sel_opts, cfg.zero_tol);
    IterationRecord rec;
    rec.k = k;
    rec.x = &x;
    rec.r = r;
    rec.step = &step;
    if (!step.selected) {
      if (observer) observer(rec);
      rep.certificate = Certificate::vb_empty;
      break;
    }
    const SubproblemResult sub = subproblem_argmin(step.selected->s);
    rec.x_next = &sub.x;
    rec.l_value = sub.l_value;
    double r_next = std::numeric_limits<double>::infinity();
    if (is_nonconstant(sub.x)) {
      try {
        r_next = r_obj(g, deg, sub.x);
      } catch (const DegenerateError&) {
      }
    }
    rec.r_next = r_next;
    rec.accepted = r_next < r - eps_dec;
    if (observer) observer(rec);
    if (!rec.accepted) {
      rep.certificate = Certificate::no_descent;
      break;
    }
    x = sub.x;
    r = r_next;
    rep.best_x = x;
    rep.r_trace.push_back(r);
    ++k;
  }
  rep.iterations = static_cast<int>(rep.r_trace.size()) - 1;
  finish_report(g, deg, rep);
  rep.wall_time = seconds_since(t0);
  return rep;
}

std::vector<InitialVector> initial_vectors(const DirectedGraph& g, const SolverConfig& cfg) {
  const Index n = g.vertex_count();
  std::vector<InitialVector> out;
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const auto want = static_cast<std::size_t>(cfg.restarts);

  std::optional<Vector> spectral;
  auto spectral_x = [&]() -> const Vector& {
    if (!spectral) {
      const EmbeddingResult e = spectral_embedding(g, cfg.spectral_max_iters, cfg.spectral_tol);
      spectral = vertex_embedding(g, e);
    }
    return *spectral;
  };
  auto push_spectral = [&] {
    const Vector& v = spectral_x();
    if (is_nonconstant(v)) out.push_back({v, "spectral(symmetrized)"});
  };
  auto push_sweep = [&] {
    const Vector& v = spectral_x();
    if (!is_nonconstant(v)) return;
    out.push_back({sweep_cut(g, v).set.indicator(), "sweep(symmetrized-spectral)"});
  };

  auto push_imbalance = [&] {
    const Vector v = degree_imbalance(g);
    if (!is_nonconstant(v)) return;
    out.push_back({sweep_cut(g, v).set.indicator(), "sweep(degree-imbalance)"});
  };

  switch (cfg.init) {
    case InitStrategy::spectral:
      push_spectral();
      push_sweep();
      push_imbalance();
      break;
    case InitStrategy::sweep:
      push_sweep();
      push_spectral();
      push_imbalance();
      break;
    case InitStrategy::imbalance:
      push_imbalance();
      push_sweep();
      push_spectral();
      break;
    case InitStrategy::user:
      if (!cfg.user_x) throw std::invalid_argument("init=user requires user_x");
      if (cfg.user_x->size() != n) throw DataError("user vector size mismatch");
      out.push_back({*cfg.user_x, "user"});
      push_sweep();
      push_spectral();
      push_imbalance();
      break;
    case InitStrategy::random:
      break;
  }
  if (out.size() > want) out.resize(want);
  for (std::uint64_t k = out.size(); out.size() < want; ++k)
    out.push_back({random_signs(n, SplitMix64::derive(cfg.seed, 0x1000 + k)), "random-signs"});
  return out;
}

SolveReport dsi_solve(const DirectedGraph& g, const SolverConfig& cfg) {
  const auto t0 = Clock::now();
  if (g.vertex_count() < 2 || g.arc_count() == 0)
    throw DegenerateError("dsi_solve: graph needs at least two vertices and one arc");
  const DegreeProfile deg = degrees(g);
  if (auto cut = component_cut(g, deg)) {
    SolveReport rep = component_report(*cut);
    rep.wall_time = seconds_since(t0);
    return rep;
  }

  // A single arc-carrying component plus isolated vertices: solve on the
  // component, then put the isolated vertices on the complement side.
  std::vector<Index> active;
  for (Index v = 0; v < g.vertex_count(); ++v)
    if (deg.d[v] > 0.0) active.push_back(v);
  if (static_cast<Index>(active.size()) < g.vertex_count()) {
    const Subgraph sub = induced_subgraph(g, active);
    SolverConfig sub_cfg = cfg;
    if (cfg.user_x) {
      Vector ux(static_cast<Index>(active.size()));
      for (std::size_t k = 0; k < active.size(); ++k) ux[static_cast<Index>(k)] = (*cfg.user_x)[active[k]];
      sub_cfg.user_x = ux;
    }
    SolveReport inner = dsi_solve(sub.graph, sub_cfg);
    SolveReport rep = inner;
    const double low = inner.best_x.minCoeff();
    rep.best_x = Vector::Constant(g.vertex_count(), low);
    rep.best_set = VertexSubset(g.vertex_count());
    for (std::size_t k = 0; k < active.size(); ++k) {
      rep.best_x[active[k]] = inner.best_x[static_cast<Index>(k)];
      rep.best_set.set(active[k], inner.best_set.contains(static_cast<Index>(k)));
    }
    rep.best_r = conductance_set(g, deg, rep.best_set).phi_d;
    rep.wall_time = seconds_since(t0);
    return rep;
  }

  const std::vector<InitialVector> starts = initial_vectors(g, cfg);
  std::vector<SolveReport> reports(starts.size());
  auto run_one = [&](std::size_t k) {
    SolverConfig run_cfg = cfg;
    run_cfg.seed = SplitMix64::derive(cfg.seed, k);
    reports[k] = dsi_run(g, deg, starts[k].x, run_cfg);
    reports[k].initialization = starts[k].label;
    reports[k].restart_index = static_cast<int>(k);
  };
  if (cfg.threads > 1 && starts.size() > 1) {
    std::vector<std::future<void>> jobs;
    std::size_t next = 0;
    const auto width = static_cast<std::size_t>(cfg.threads);
    while (next < starts.size()) {
      jobs.clear();
      for (std::size_t w = 0; w < width && next < starts.size(); ++w, ++next)
        jobs.push_back(std::async(std::launch::async, run_one, next));
      for (auto& j : jobs) j.get();
    }
  } else {
    for (std::size_t k = 0; k < starts.size(); ++k) run_one(k);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < reports.size(); ++k)
    if (reports[k].best_r < reports[best].best_r) best = k;
  SolveReport rep = std::move(reports[best]);
  rep.wall_time = seconds_since(t0);
  return rep;
}

}  // namespace dsicut
