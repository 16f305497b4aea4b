#include <doctest.h>

#include "densegraph/core.hpp"
#include "densegraph/errors.hpp"
#include "reference.hpp"
#include "test_util.hpp"

using namespace densegraph;

TEST_CASE("exact coreness on the pinned small graphs") {
  SUBCASE("K5: every label 4") {
    CoreDecomposition d = exact_coreness(tu::clique(5));
    CHECK(d.labels == std::vector<u32>(5, 4));
    CHECK(d.kmax == 4);
    CHECK(d.kind == CoreKind::exact);
    CHECK(d.peel_rounds >= 1);
  }
  SUBCASE("triangle with pendant") {
    CoreDecomposition d = exact_coreness(tu::triangle_pendant());
    CHECK(d.labels == std::vector<u32>{2, 2, 2, 1});
    CHECK(d.kmax == 2);
  }
  SUBCASE("path: all ones") {
    CoreDecomposition d = exact_coreness(tu::path_graph(4));
    CHECK(d.labels == std::vector<u32>(4, 1));
    CHECK(d.kmax == 1);
  }
}

TEST_CASE("exact coreness equals the sequential reference on random graphs") {
  for (u64 seed = 1; seed <= 60; ++seed) {
    u64 n = 2 + densegraph::mix64(seed) % 99;
    u64 p = 20 + densegraph::mix64(seed * 7 + 1) % 300;
    Graph g = tu::random_graph(n, p, seed);
    CoreDecomposition d = exact_coreness(g);
    ref::CorenessRef r = ref::coreness(g);
    CHECK(d.labels == r.labels);
    CHECK(d.kmax == r.kmax);
    for (u64 v = 0; v < g.n; ++v) CHECK(r.removal_deg[v] <= d.labels[v]);
  }
}

TEST_CASE("approximate coreness satisfies the sandwich") {
  auto sandwich = [](const Graph& g, u64 cn, u64 cd) {
    CoreDecomposition ap = approx_coreness(g, cn, cd);
    CoreDecomposition ex = exact_coreness(g);
    CHECK(ap.kind == CoreKind::approximate);
    CHECK(ap.c_num == cn);
    CHECK(ap.c_den == cd);
    for (u64 v = 0; v < g.n; ++v) {
      // k(v)/c <= label <= c*k(v), cross-multiplied
      CHECK(u64(ap.labels[v]) * cn >= u64(ex.labels[v]) * cd);
      CHECK(u64(ap.labels[v]) * cd <= u64(ex.labels[v]) * cn);
    }
    u64 kmax = 0;
    for (u32 l : ap.labels) kmax = std::max<u64>(kmax, l);
    CHECK(ap.kmax == kmax);
  };

  SUBCASE("K5 with c=1.5") { sandwich(tu::clique(5), 3, 2); }
  SUBCASE("P4: only integer in range is 1") {
    CoreDecomposition ap = approx_coreness(tu::path_graph(4), 3, 2);
    CHECK(ap.labels == std::vector<u32>(4, 1));
  }
  SUBCASE("random graphs, several factors") {
    for (u64 seed = 1; seed <= 25; ++seed) {
      Graph g = tu::random_graph(2 + seed * 7 % 150, 60, seed * 13 + 5);
      sandwich(g, 3, 2);
      sandwich(g, 2, 1);
      sandwich(g, 11, 10);
    }
  }
}

TEST_CASE("approximate coreness rejects factors <= 1") {
  Graph g = tu::clique(4);
  CHECK_THROWS_AS(approx_coreness(g, 1, 1), ParamError);
  CHECK_THROWS_AS(approx_coreness(g, 2, 3), ParamError);
  CHECK_THROWS_AS(approx_coreness(g, 1, 0), ParamError);
}

TEST_CASE("coreness of an empty graph is an error") {
  Graph g;
  CHECK_THROWS_AS(exact_coreness(g), EmptyGraphError);
  CHECK_THROWS_AS(approx_coreness(g, 3, 2), EmptyGraphError);
}

TEST_CASE("get_core extracts the labeled subgraph") {
  SUBCASE("K5 at kmax is K5") {
    Graph g = tu::clique(5);
    CoreDecomposition d = exact_coreness(g);
    Graph c = get_core(g, d, 4);
    CHECK(c.n == 5);
    CHECK(c.m == 10);
  }
  SUBCASE("triangle survives, pendant drops") {
    Graph g = tu::triangle_pendant();
    CoreDecomposition d = exact_coreness(g);
    std::vector<u32> map;
    Graph c = get_core(g, d, 2, &map);
    CHECK(c.n == 3);
    CHECK(c.m == 3);
    CHECK(c.orig == std::vector<u64>{0, 1, 2});
    CHECK(map[3] == kNoVertex);
  }
  SUBCASE("label vector of the wrong size is a contract error") {
    Graph g = tu::clique(3);
    CoreDecomposition d = exact_coreness(tu::clique(4));
    CHECK_THROWS_AS(get_core(g, d, 1), InvariantError);
  }
}

TEST_CASE("core family is nested with min induced degree >= k") {
  for (u64 seed = 1; seed <= 20; ++seed) {
    Graph g = tu::random_graph(40, 120, seed * 3 + 2);
    CoreDecomposition d = exact_coreness(g);
    u64 prev_n = g.n + 1;
    for (u32 k = 1; k <= d.kmax; ++k) {
      Graph c = get_core(g, d, k);
      CHECK(c.n <= prev_n);
      prev_n = c.n;
      CHECK(c.n > 0);  // the kmax-core is nonempty, lower cores contain it
      for (u64 v = 0; v < c.n; ++v) CHECK(c.degree(static_cast<u32>(v)) >= k);
    }
  }
}

TEST_CASE("kmax-core density is at least kmax/2") {
  for (u64 seed = 1; seed <= 20; ++seed) {
    Graph g = tu::random_graph(30, 200, seed + 77);
    CoreDecomposition d = exact_coreness(g);
    Graph c = get_core(g, d, d.kmax);
    CHECK(c.density() >= Density{d.kmax, 2});
  }
}

TEST_CASE("coreness is identical across thread counts") {
  Graph g = tu::random_graph(400, 30, 4242);
  Graph big = tu::star(3000);  // one 3000-vertex round, exercises the parallel batch path
  set_threads(1);
  CoreDecomposition one = exact_coreness(g);
  CoreDecomposition one_ap = approx_coreness(g, 3, 2);
  CoreDecomposition one_big = exact_coreness(big);
  set_threads(4);
  CoreDecomposition four = exact_coreness(g);
  CoreDecomposition four_ap = approx_coreness(g, 3, 2);
  CoreDecomposition four_big = exact_coreness(big);
  set_threads(0);
  CHECK(one.labels == four.labels);
  CHECK(one.kmax == four.kmax);
  CHECK(one.peel_rounds == four.peel_rounds);
  CHECK(one_ap.labels == four_ap.labels);
  CHECK(one_big.labels == four_big.labels);
  CHECK(one_big.labels == std::vector<u32>(big.n, 1));
}
