#include <doctest.h>

#include "dsicut/baselines.hpp"
#include "dsicut/generators.hpp"
#include "dsicut/oracle.hpp"
#include "dsicut/solver.hpp"
#include "support.hpp"

using namespace dsicut;
using namespace dsicut::testing;

namespace {

// min over the unit 1-norm sphere of |x|_inf - <x, s>.  The objective is
// positively homogeneous and piecewise linear, so its minimum over the sphere
// is attained at a normalized sign pattern sign_i * 1_T / |T|.
double brute_l(const Vector& s) {
  const Index n = static_cast<Index>(s.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t support = 1; support < (1ULL << n); ++support) {
    const int k = std::popcount(support);
    double inner = 0;
    for (Index i = 0; i < n; ++i)
      if ((support >> i) & 1) inner += std::abs(s[i]);
    best = std::min(best, 1.0 / k - inner / k);
  }
  return best;
}

VertexSubset members1(Index n, std::initializer_list<Index> one_based) {
  VertexSubset s(n);
  for (Index i : one_based) s.set(i - 1);
  return s;
}

bool same_report(const SolveReport& a, const SolveReport& b) {
  return a.best_r == b.best_r && a.best_x == b.best_x && a.best_set == b.best_set && a.r_trace == b.r_trace &&
         a.iterations == b.iterations && a.certificate == b.certificate &&
         a.is_flip_local_opt == b.is_flip_local_opt && a.initialization == b.initialization &&
         a.restart_index == b.restart_index && a.zero_entries == b.zero_entries;
}

}  // namespace

TEST_CASE("subproblem examples") {
  auto res = subproblem_argmin(vec({0.8, -0.5, 0.1}));
  CHECK(res.x == vec({0.5, -0.5, 0}));
  CHECK(res.l_value == doctest::Approx(-0.15).epsilon(1e-15));

  res = subproblem_argmin(vec({-0.25, -1, 0.25}));
  CHECK(res.x[0] == doctest::Approx(-1.0 / 3));
  CHECK(res.x[1] == doctest::Approx(-1.0 / 3));
  CHECK(res.x[2] == doctest::Approx(1.0 / 3));
  CHECK(res.l_value == doctest::Approx(-1.0 / 6).epsilon(1e-15));

  res = subproblem_argmin(vec({0.3, 0.2, 0.1}));
  CHECK(res.x == vec({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(res.l_value == doctest::Approx(1.0 / 3 - 0.2).epsilon(1e-15));
  CHECK(res.l_value >= 0);

  res = subproblem_argmin(vec({0, 0, 0, 0}));
  CHECK(res.x == vec({0.25, 0.25, 0.25, 0.25}));
  CHECK(res.l_value == 0.25);
}

TEST_CASE("subproblem matches exhaustive sign-pattern search") {
  SplitMix64 rng(51);
  for (int t = 0; t < 2000; ++t) {
    const Index n = 1 + static_cast<Index>(rng.below(8));
    Vector s(n);
    const double scale = 0.2 + 2 * rng.uniform();
    for (Index i = 0; i < n; ++i) {
      s[i] = scale * (2 * rng.uniform() - 1);
      if (t % 3 == 0) s[i] = std::round(4 * s[i]) / 4;  // exact ties and degenerate bands
    }
    const auto res = subproblem_argmin(s);
    CHECK(res.x.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
    const double attained = res.x.cwiseAbs().maxCoeff() - res.x.dot(s);
    CHECK(attained == doctest::Approx(res.l_value).epsilon(1e-14));
    if (s.cwiseAbs().sum() > 1) CHECK(std::abs(res.l_value - brute_l(s)) <= 1e-12);
    else CHECK(res.l_value >= -1e-15);
    // The minimum is negative exactly when |s|_1 > 1 (outside ties).
    if (s.cwiseAbs().sum() > 1 + 1e-9) CHECK(res.l_value < 0);
  }
}

TEST_CASE("partition extraction") {
  const auto p3 = canonical("p3");
  auto part = extract_partition(p3, vec({-1.0 / 3, -1.0 / 3, 1.0 / 3}));
  CHECK(part.set == members1(3, {3}));
  CHECK(part.phi == 0);

  part = extract_partition(p3, vec({0.9, 0.5, 0.1}));
  CHECK(part.set == members1(3, {1}));
  CHECK(part.phi == 0);

  CHECK_THROWS_AS(extract_partition(p3, vec({1, 1, 1})), DegenerateError);

  SplitMix64 rng(52);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(8));
    const auto g = random_connected(rng, n, 0.4, true);
    const std::uint64_t m = 1 + rng.below((1ULL << n) - 2);
    const auto s = VertexSubset::from_mask(n, m);
    const auto direct = conductance_set(g, s);
    const double scale = 0.5 + rng.uniform();
    part = extract_partition(g, Vector(scale * s.indicator()));
    CHECK(part.set == s);
    CHECK(part.phi == direct.phi_d);
  }
}

TEST_CASE("partition extraction finds the best threshold set") {
  SplitMix64 rng(53);
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(8));
    const auto g = random_connected(rng, n, 0.4, true);
    Vector x(n);
    for (Index i = 0; i < n; ++i) x[i] = static_cast<double>(rng.below(4));
    if (!is_nonconstant(x)) continue;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      std::uint64_t m = 0;
      for (Index j = 0; j < n; ++j)
        if (x[j] > x[i]) m |= 1ULL << j;
      const auto ref = naive_phi(g, m);
      if (m != 0 && ref.defined) best = std::min(best, ref.phi_d);
    }
    const auto part = extract_partition(g, x);
    CHECK(part.phi == doctest::Approx(best).epsilon(1e-14));
    CHECK(part.phi == conductance_set(g, part.set).phi_d);
  }
}

TEST_CASE("flip local optimality") {
  CHECK(verify_local_opt(canonical("c3"), members1(3, {1})));
  CHECK_FALSE(verify_local_opt(canonical("p3"), members1(3, {1, 3})));
  CHECK(verify_local_opt(canonical("p2"), members1(2, {1})));
}

TEST_CASE("flip local optimality agrees with direct flips") {
  SplitMix64 rng(54);
  for (int t = 0; t < 60; ++t) {
    const Index n = 3 + static_cast<Index>(rng.below(5));
    const auto g = random_connected(rng, n, 0.4);
    for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
      const auto base = naive_phi(g, m);
      if (!base.defined) continue;
      bool improvable = false;
      for (Index i = 0; i < n; ++i) {
        const std::uint64_t f = m ^ (1ULL << i);
        if (f == 0 || f + 1 == (1ULL << n)) continue;
        const auto flipped = naive_phi(g, f);
        if (flipped.defined && flipped.phi_d < base.phi_d - 1e-12) improvable = true;
      }
      CHECK(verify_local_opt(g, VertexSubset::from_mask(n, m)) == !improvable);
    }
  }
}

TEST_CASE("single runs reproduce the worked traces") {
  SUBCASE("P3") {
    const auto g = canonical("p3");
    const auto rep = dsi_run(g, degrees(g), vec({1, -1, 1}), {});
    REQUIRE(rep.r_trace.size() == 2);
    CHECK(rep.r_trace[0] == 0.5);
    CHECK(rep.r_trace[1] == 0);
    CHECK(rep.best_r == 0);
    CHECK((rep.best_set == members1(3, {3}) || rep.best_set == members1(3, {1})));
  }
  SUBCASE("C3") {
    const auto g = canonical("c3");
    const auto rep = dsi_run(g, degrees(g), vec({1, -1, -1}), {});
    CHECK(rep.certificate == Certificate::vb_empty);
    CHECK(rep.best_r == 0.5);
    CHECK(rep.r_trace == std::vector<double>{0.5});
    CHECK(rep.is_flip_local_opt);
  }
  SUBCASE("constant start") {
    const auto g = canonical("c3");
    CHECK_THROWS_AS(dsi_run(g, degrees(g), vec({1, 1, 1}), {}), DegenerateError);
  }
}

TEST_CASE("observer sees strictly decreasing accepted steps and tight subgradients") {
  SplitMix64 rng(55);
  for (int t = 0; t < 60; ++t) {
    const Index n = 4 + static_cast<Index>(rng.below(10));
    const auto g = random_connected(rng, n, 0.3, t % 2 == 0);
    const auto deg = degrees(g);
    Vector x1 = Vector::Random(n);
    int accepted = 0;
    const auto rep = dsi_run(g, deg, x1, {}, [&](const IterationRecord& rec) {
      CHECK(rec.r == doctest::Approx(r_obj(g, deg, *rec.x)).epsilon(1e-12));
      if (rec.step->selected) {
        const Vector& s = rec.step->selected->s;
        CHECK(std::abs(rec.x->cwiseAbs().maxCoeff() - rec.x->dot(s)) <= 1e-10);
        if (s.cwiseAbs().sum() > 1 + 1e-9 && rec.x_next) CHECK(rec.r_next < rec.r);
      }
      if (rec.accepted) {
        ++accepted;
        CHECK(rec.r_next < rec.r);
      }
    });
    for (std::size_t k = 1; k < rep.r_trace.size(); ++k) CHECK(rep.r_trace[k] < rep.r_trace[k - 1]);
    CHECK(static_cast<int>(rep.r_trace.size()) == accepted + 1);
    CHECK(rep.iterations <= SolverConfig{}.max_iters);
    CHECK(std::abs(rep.best_r - conductance_set(g, rep.best_set).phi_d) <= 1e-9);
  }
}

TEST_CASE("iteration cap") {
  SplitMix64 rng(56);
  const auto g = random_connected(rng, 30, 0.15);
  SolverConfig cfg;
  cfg.max_iters = 1;
  const auto rep = dsi_run(g, degrees(g), Vector::Random(30), cfg);
  CHECK(rep.iterations <= 1);
  CHECK(rep.r_trace.size() <= 2);
}

TEST_CASE("component pre-check") {
  const auto two = canonical("c3");
  const auto g = graph1(6, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {4, 5, 1}, {5, 6, 1}, {6, 4, 1}});
  const auto rep = dsi_solve(g);
  CHECK(rep.certificate == Certificate::component_cut);
  CHECK(rep.best_r == 0);
  CHECK(rep.iterations == 0);
  CHECK(conductance_set(g, rep.best_set).phi_d == 0);
  (void)two;
}

TEST_CASE("isolated vertices are carried along") {
  const auto g = graph1(5, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {3, 4, 1}});
  const auto rep = dsi_solve(g);
  CHECK(rep.best_x.size() == 5);
  CHECK(rep.best_set.vertex_count() == 5);
  CHECK(rep.best_r == conductance_set(g, rep.best_set).phi_d);
  CHECK(rep.best_r == doctest::Approx(naive_phi_min(g)));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(dsi_solve(DirectedGraph::from_arcs(3, {})), DegenerateError);
  CHECK_THROWS_AS(dsi_solve(DirectedGraph::from_arcs(1, {})), DegenerateError);
}

TEST_CASE("initial vectors") {
  SplitMix64 rng(57);
  const auto g = random_connected(rng, 20, 0.2);
  SolverConfig cfg;
  cfg.restarts = 6;
  const auto starts = initial_vectors(g, cfg);
  REQUIRE(starts.size() == 6);
  CHECK(starts[0].label == "spectral(symmetrized)");
  CHECK(starts[1].label == "sweep(symmetrized-spectral)");
  CHECK(starts[2].label == "sweep(degree-imbalance)");
  CHECK(starts[3].label == "random-signs");
  const auto sweep = baseline_sweep(g);
  CHECK(starts[1].x == sweep.set.indicator());
  for (const auto& s : starts) CHECK(is_nonconstant(s.x));

  cfg.restarts = 2;
  cfg.init = InitStrategy::random;
  for (const auto& s : initial_vectors(g, cfg)) CHECK(s.x.cwiseAbs().minCoeff() == 1);

  cfg.init = InitStrategy::user;
  cfg.user_x = Vector::LinSpaced(20, -1, 1);
  CHECK(initial_vectors(g, cfg).front().x == *cfg.user_x);

  CHECK(parse_init_strategy("sweep") == InitStrategy::sweep);
  CHECK_THROWS(parse_init_strategy("bogus"));
}

TEST_CASE("solver never beats the oracle and never loses to the sweep baseline") {
  SplitMix64 rng(58);
  for (int t = 0; t < 80; ++t) {
    const Index n = 3 + static_cast<Index>(rng.below(10));
    const auto g = random_connected(rng, n, 0.3, t % 2 == 0);
    const auto rep = dsi_solve(g);
    const double phi = brute_conductance(g).phi_d_min;
    CHECK(rep.best_r >= phi - 1e-9);
    CHECK(rep.best_r <= baseline_sweep(g).phi + 1e-9);
    CHECK(std::abs(rep.best_r - conductance_set(g, rep.best_set).phi_d) <= 1e-9);
  }
}

TEST_CASE("determinism across runs and thread counts") {
  SplitMix64 rng(59);
  const auto g = random_connected(rng, 40, 0.08);
  SolverConfig cfg;
  cfg.seed = 99;
  cfg.restarts = 6;
  const auto a = dsi_solve(g, cfg);
  const auto b = dsi_solve(g, cfg);
  cfg.threads = 4;
  const auto c = dsi_solve(g, cfg);
  CHECK(same_report(a, b));
  CHECK(same_report(a, c));

  cfg.pivot = PivotRule::seeded_random;
  const auto d = dsi_solve(g, cfg), e = dsi_solve(g, cfg);
  CHECK(same_report(d, e));
}

TEST_CASE("small digraphs terminate with a certificate other than the cap") {
  auto check_all_starts = [](const DirectedGraph& g) {
    const auto deg = degrees(g);
    const Index n = g.vertex_count();
    for (std::uint64_t m = 1; m + 1 < (1ULL << n); m += 2) {
      const Vector x = VertexSubset::from_mask(n, m).indicator();
      if (!(n_med(deg, x).n_value > 0)) continue;
      CHECK(dsi_run(g, deg, x, {}).certificate != Certificate::max_iters);
    }
  };
  for (Index n = 2; n <= 5; ++n)
    for (const auto& g : all_digraphs_up_to_iso(n))
      if (g.arc_count() > 0) check_all_starts(g);
  SplitMix64 rng(60);
  for (int t = 0; t < 500; ++t) check_all_starts(random_connected(rng, 6, 0.2 + 0.5 * rng.uniform()));
}
