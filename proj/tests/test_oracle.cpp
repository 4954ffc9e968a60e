#include <doctest.h>

#include "dsicut/generators.hpp"
#include "dsicut/oracle.hpp"
#include "support.hpp"

using namespace dsicut;
using namespace dsicut::testing;

TEST_CASE("oracle examples") {
  SUBCASE("C3") {
    const auto res = brute_conductance(canonical("c3"));
    CHECK(res.phi_d_min == 0.5);
    CHECK(res.subsets_enumerated == 3);
    CHECK(brute_binary_r_min(canonical("c3"), degrees(canonical("c3"))).r_min == 0.5);
  }
  SUBCASE("P2") {
    const auto res = brute_conductance(canonical("p2"));
    CHECK(res.phi_d_min == 0);
    CHECK(res.argmin_d.members() == std::vector<Index>{0});
    CHECK(res.phi_plus_min == 0);
    CHECK(res.argmin_plus.members() == std::vector<Index>{1});
    CHECK(res.phi_minus_min == 0);
    CHECK(res.argmin_minus.members() == std::vector<Index>{0});
  }
  SUBCASE("P3") {
    const auto g = canonical("p3");
    CHECK(brute_conductance(g).phi_d_min == 0);
    CHECK(brute_binary_r_min(g, degrees(g)).r_min == 0);
  }
  SUBCASE("two C3 copies") {
    const auto g = graph1(6, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {4, 5, 1}, {5, 6, 1}, {6, 4, 1}});
    const auto res = brute_conductance(g);
    CHECK(res.phi_d_min == 0);
    CHECK(res.argmin_d.members() == std::vector<Index>{0, 1, 2});
  }
}

TEST_CASE("size limits") {
  const auto g = canonical("dicycle:10");
  CHECK_THROWS_AS(brute_conductance(g, 9), SizeLimitError);
  CHECK_NOTHROW(brute_conductance(g, 10));
  CHECK_THROWS_AS(brute_binary_r_min(g, degrees(g), 9), SizeLimitError);
  CHECK_THROWS_AS(brute_conductance(canonical("dicycle:70"), 100), SizeLimitError);
}

TEST_CASE("oracle agrees with naive enumeration and the directional identity") {
  SplitMix64 rng(61);
  for (int t = 0; t < 200; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const auto g = random_digraph(rng, n, 0.3, t % 2 == 0);
    if (g.arc_count() == 0) continue;
    const auto res = brute_conductance(g);
    CHECK(res.subsets_enumerated == (1ULL << (n - 1)) - 1);
    double d = std::numeric_limits<double>::infinity(), plus = d, minus = d;
    for (std::uint64_t m = 1; m + 1 < (1ULL << n); ++m) {
      const auto ref = naive_phi(g, m);
      if (!ref.defined) continue;
      d = std::min(d, ref.phi_d);
      plus = std::min(plus, ref.phi_plus);
      minus = std::min(minus, ref.phi_minus);
    }
    CHECK(res.phi_d_min == doctest::Approx(d).epsilon(1e-14));
    CHECK(res.phi_plus_min == doctest::Approx(plus).epsilon(1e-14));
    CHECK(res.phi_minus_min == doctest::Approx(minus).epsilon(1e-14));
    CHECK(res.phi_d_min == std::min(res.phi_plus_min, res.phi_minus_min));
    CHECK(res.argmin_d.contains(0));
    CHECK(conductance_set(g, res.argmin_d).phi_d == res.phi_d_min);
    CHECK(conductance_set(g, res.argmin_plus).phi_plus == res.phi_plus_min);
    CHECK(conductance_set(g, res.argmin_minus).phi_minus == res.phi_minus_min);
  }
}

TEST_CASE("argmin ties go to the smallest bitmask") {
  const auto res = brute_conductance(canonical("c3"));
  CHECK(res.argmin_d.members() == std::vector<Index>{0});
  const auto cyc = brute_conductance(canonical("dicycle:6"));
  CHECK(cyc.argmin_d.members() == std::vector<Index>{0, 1, 2});
}

TEST_CASE("binary minimum of r equals the graph conductance") {
  SplitMix64 rng(62);
  for (int t = 0; t < 500; ++t) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const auto g = random_digraph(rng, n, 0.3, t % 2 == 0);
    if (g.arc_count() == 0) continue;
    const auto bin = brute_binary_r_min(g, degrees(g));
    const auto res = brute_conductance(g);
    CHECK(std::abs(bin.r_min - res.phi_d_min) <= 1e-12);
    CHECK(std::abs(conductance_set(g, bin.argmin).phi_d - bin.r_min) <= 1e-12);
  }
}
