#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dsicut/generators.hpp"
#include "dsicut/io.hpp"
#include "support.hpp"

using namespace dsicut;
using namespace dsicut::testing;

namespace {

DirectedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dsicut_test_" + name);
}

}  // namespace

TEST_CASE("edge list parsing") {
  SUBCASE("default weight") {
    const auto g = parse("1 2\n");
    CHECK(g.vertex_count() == 2);
    REQUIRE(g.arc_count() == 1);
    CHECK(g.arcs()[0].weight == 1.0);
  }
  SUBCASE("parallel arcs are summed") {
    const auto g = parse("1 2 0.5\n1 2 0.5\n");
    REQUIRE(g.arc_count() == 1);
    CHECK(g.arcs()[0].weight == 1.0);
    CHECK(g.build_stats().parallel_merged == 1);
  }
  SUBCASE("self-loops are dropped and counted") {
    const auto g = parse("1 1 3.0\n1 2 1\n");
    CHECK(g.arc_count() == 1);
    CHECK(g.build_stats().self_loops_dropped == 1);
  }
  SUBCASE("comments, tabs, commas and string labels") {
    const auto g = parse("# header\n% other\n\nalpha\tbeta 2\nbeta,gamma\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.label(0) == "alpha");
    CHECK(g.label(2) == "gamma");
    CHECK(g.total_weight() == 3.0);
  }
  SUBCASE("zero weights are dropped") {
    const auto g = parse("1 2 0\n2 3 1\n");
    CHECK(g.arc_count() == 1);
    CHECK(g.vertex_count() == 3);
  }
}

TEST_CASE("edge list errors carry line numbers") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const DataError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("1 2\n3\n").find("line 2") != std::string::npos);
  CHECK(message("1 2 -1\n").find("negative") != std::string::npos);
  CHECK(message("1 2 abc\n").find("line 1") != std::string::npos);
  CHECK(message("1 2 3 4\n").find("line 1") != std::string::npos);
  CHECK(message("# nothing\n").find("empty") != std::string::npos);
  CHECK_THROWS_AS(parse("1 2 nan\n"), DataError);
}

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(DirectedGraph::from_arcs(2, {{0, 2, 1.0}}), DataError);
  CHECK_THROWS_AS(DirectedGraph::from_arcs(2, {{0, 1, -1.0}}), DataError);
  CHECK_THROWS_AS(DirectedGraph::from_arcs(2, {{0, 1, std::numeric_limits<double>::infinity()}}), DataError);
}

TEST_CASE("degree profiles of the fixtures") {
  SUBCASE("P2") {
    const auto deg = degrees(canonical("p2"));
    CHECK(deg.d_out == vec({1, 0}));
    CHECK(deg.d_in == vec({0, 1}));
    CHECK(deg.d == vec({1, 1}));
    CHECK(deg.d_delta == vec({1, -1}));
    CHECK(deg.vol_total == 2);
  }
  SUBCASE("C3") {
    const auto deg = degrees(canonical("c3"));
    CHECK(deg.d == vec({2, 2, 2}));
    CHECK(deg.d_delta == vec({0, 0, 0}));
    CHECK(deg.vol_total == 6);
  }
  SUBCASE("B2") {
    const auto deg = degrees(canonical("b2"));
    CHECK(deg.d == vec({2, 2}));
    CHECK(deg.d_delta == vec({0, 0}));
    CHECK(deg.vol_total == 4);
  }
}

TEST_CASE("degree invariants on random graphs") {
  SplitMix64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_digraph(rng, 2 + static_cast<Index>(rng.below(20)), 0.3, true);
    const auto deg = degrees(g);
    CHECK(std::abs(deg.d_delta.sum()) <= 1e-12);
    CHECK(deg.vol_total == doctest::Approx(2 * g.total_weight()));
    CHECK((deg.d - deg.d_out - deg.d_in).cwiseAbs().maxCoeff() == 0.0);
    for (Index i = 0; i < g.vertex_count(); ++i)
      for (const Neighbor& nb : g.neighbors(i)) {
        bool found = false;
        for (const Neighbor& back : g.neighbors(nb.vertex))
          if (back.vertex == i) found = back.weight == nb.weight;
        CHECK(found);
      }
  }
}

TEST_CASE("cut values and conductance") {
  const auto p2 = canonical("p2"), c3 = canonical("c3"), b2 = canonical("b2");
  auto s = [](Index n, std::initializer_list<Index> m) {
    std::vector<Index> v;
    for (Index i : m) v.push_back(i - 1);
    return VertexSubset::from_members(n, v);
  };
  auto cv = cut_values(p2, s(2, {1}));
  CHECK(cv.cut_plus == 1);
  CHECK(cv.cut_minus == 0);
  CHECK(cv.vol_s == 1);
  CHECK(cv.vol_comp == 1);
  cv = cut_values(c3, s(3, {1}));
  CHECK((cv.cut_plus == 1 && cv.cut_minus == 1 && cv.vol_s == 2 && cv.vol_comp == 4));
  cv = cut_values(c3, s(3, {1, 2}));
  CHECK((cv.cut_plus == 1 && cv.cut_minus == 1 && cv.vol_s == 4 && cv.vol_comp == 2));

  const auto phi = conductance_set(p2, s(2, {1}));
  CHECK(phi.phi_d == 0);
  CHECK(phi.phi_plus == 1);
  CHECK(phi.phi_minus == 0);
  CHECK(conductance_set(c3, s(3, {1})).phi_d == 0.5);
  CHECK(conductance_set(b2, s(2, {1})).phi_d == 0.5);

  CHECK_THROWS_AS(cut_values(c3, VertexSubset(3)), DegenerateError);
  CHECK_THROWS_AS(cut_values(c3, VertexSubset(3).complement()), DegenerateError);
  const auto iso = DirectedGraph::from_arcs(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(conductance_set(iso, s(3, {3})), DegenerateError);
}

TEST_CASE("complement symmetry and agreement with direct arc sums") {
  SplitMix64 rng(12);
  for (int t = 0; t < 40; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const auto g = random_connected(rng, n, 0.35, true);
    for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
      const auto s = VertexSubset::from_mask(n, m);
      const auto a = cut_values(g, s), b = cut_values(g, s.complement());
      CHECK(a.cut_plus == b.cut_minus);
      const auto ref = naive_phi(g, m);
      if (!ref.defined) continue;
      const auto phi = conductance_set(g, s);
      CHECK(phi.phi_d == doctest::Approx(ref.phi_d).epsilon(1e-14));
      CHECK(phi.phi_plus == doctest::Approx(ref.phi_plus).epsilon(1e-14));
      CHECK(phi.phi_d == doctest::Approx(conductance_set(g, s.complement()).phi_d).epsilon(1e-14));
    }
  }
}

TEST_CASE("bidirectionalized undirected graphs halve the undirected conductance") {
  SplitMix64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const Index n = 3 + static_cast<Index>(rng.below(6));
    std::vector<Arc> arcs;
    std::vector<std::array<double, 3>> edges;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (rng.uniform() < 0.5) {
          const double w = 1.0 + static_cast<double>(rng.below(3));
          edges.push_back({double(i), double(j), w});
          arcs.push_back({i, j, w});
          arcs.push_back({j, i, w});
        }
    const auto g = DirectedGraph::from_arcs(n, arcs);
    for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
      double cut = 0, vs = 0, vc = 0;
      for (const auto& e : edges) {
        const bool a = (m >> static_cast<int>(e[0])) & 1, b = (m >> static_cast<int>(e[1])) & 1;
        if (a != b) cut += e[2];
        (a ? vs : vc) += e[2];
        (b ? vs : vc) += e[2];
      }
      if (!(std::min(vs, vc) > 0)) continue;
      CHECK(conductance_set(g, VertexSubset::from_mask(n, m)).phi_d ==
            doctest::Approx(cut / std::min(vs, vc) / 2).epsilon(1e-14));
    }
  }
}

TEST_CASE("weak components") {
  SUBCASE("P2 plus an isolated vertex") {
    const auto g = DirectedGraph::from_arcs(3, {{0, 1, 1.0}});
    const auto c = largest_weak_component(g);
    CHECK(c.graph.vertex_count() == 2);
    CHECK(c.graph.arc_count() == 1);
    CHECK(c.original_id == std::vector<Index>{0, 1});
  }
  SUBCASE("two C3 copies tie; the copy with the smallest id wins") {
    const auto g = graph1(6, {{4, 5, 1}, {5, 6, 1}, {6, 4, 1}, {1, 2, 1}, {2, 3, 1}, {3, 1, 1}});
    const auto c = largest_weak_component(g);
    CHECK(c.graph.vertex_count() == 3);
    CHECK(c.graph.arc_count() == 3);
    CHECK(c.original_id == std::vector<Index>{0, 1, 2});
  }
  SUBCASE("arcs 1->2, 3->4, 4->3, 3->5") {
    const auto g = graph1(5, {{1, 2, 1}, {3, 4, 1}, {4, 3, 1}, {3, 5, 1}});
    const auto c = largest_weak_component(g);
    CHECK(c.original_id == std::vector<Index>{2, 3, 4});
    CHECK(c.graph.arc_count() == 3);
    CHECK(c.graph.label(0) == "3");
  }
}

TEST_CASE("file round trips") {
  SplitMix64 rng(14);
  const auto g = random_connected(rng, 12, 0.3, true);
  SUBCASE("plain and gzip edge lists") {
    for (const char* name : {"rt.el", "rt.el.gz"}) {
      const auto path = temp_file(name);
      save_graph_file(path, g);
      const auto h = load_graph_file(path);
      CHECK(h.arc_count() == g.arc_count());
      CHECK(h.total_weight() == g.total_weight());
      std::filesystem::remove(path);
    }
  }
  SUBCASE("gzip output is really compressed") {
    const auto path = temp_file("magic.el.gz");
    save_graph_file(path, g);
    std::ifstream in(path, std::ios::binary);
    unsigned char magic[2] = {0, 0};
    in.read(reinterpret_cast<char*>(magic), 2);
    CHECK(magic[0] == 0x1f);
    CHECK(magic[1] == 0x8b);
    std::filesystem::remove(path);
  }
  SUBCASE("MatrixMarket keeps isolated vertices") {
    const auto iso = DirectedGraph::from_arcs(4, {{0, 1, 2.5}});
    const auto path = temp_file("iso.mtx");
    save_graph_file(path, iso);
    const auto h = load_graph_file(path);
    CHECK(h.vertex_count() == 4);
    CHECK(h.arcs()[0] == Arc{0, 1, 2.5});
    std::filesystem::remove(path);
  }
  SUBCASE("MatrixMarket pattern and symmetric files") {
    const auto path = temp_file("sym.mtx");
    std::ofstream(path) << "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n2 1\n3 2\n";
    const auto h = load_graph_file(path);
    CHECK(h.arc_count() == 4);
    std::ofstream(path) << "%%MatrixMarket matrix coordinate real general\n3 3 2\n2 1 1\n";
    CHECK_THROWS_AS(load_graph_file(path), DataError);
    std::filesystem::remove(path);
  }
}
