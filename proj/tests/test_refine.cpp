#include <doctest.h>

#include <numeric>

#include "densegraph/errors.hpp"
#include "densegraph/refine.hpp"
#include "reference.hpp"
#include "test_util.hpp"

using namespace densegraph;

namespace {

LoadState zeros(u64 n) {
  LoadState s;
  s.loads.assign(n, 0);
  return s;
}

Ordering identity(u64 n) {
  Ordering o;
  o.perm.resize(n);
  std::iota(o.perm.begin(), o.perm.end(), 0u);
  return o;
}

}  // namespace

TEST_CASE("peel order on the pinned examples") {
  SUBCASE("P3: endpoints first, middle last") {
    Graph g = tu::path_graph(3);
    LoadState s = zeros(3);
    Ordering o = load_peel_order(g, s);
    CHECK(o.perm == std::vector<u32>{0, 2, 1});
    CHECK(o.kind == OrderKind::peel_by_load);
  }
  SUBCASE("K4: one batch in id order") {
    Graph g = tu::clique(4);
    LoadState s = zeros(4);
    CHECK(load_peel_order(g, s).perm == std::vector<u32>{0, 1, 2, 3});
  }
  SUBCASE("loaded pendant peels last") {
    Graph g = tu::triangle_pendant();
    LoadState s = zeros(4);
    s.loads[3] = 10;
    CHECK(load_peel_order(g, s).perm == std::vector<u32>{0, 1, 2, 3});
  }
}

TEST_CASE("peel order matches the sequential batch reference") {
  for (u64 seed = 1; seed <= 40; ++seed) {
    u64 n = 2 + densegraph::mix64(seed * 5) % 99;
    Graph g = tu::random_graph(n, 15 + seed * 17 % 400, seed);
    std::vector<u64> loads = tu::random_loads(g.n, seed % 3 == 0 ? 0 : 12, seed ^ 0xf00d);
    LoadState s{loads};
    CHECK(load_peel_order(g, s).perm == ref::load_peel(g, loads));
    CHECK(load_peel_order(g, s, true).perm == ref::load_peel(g, loads, true));
  }
}

TEST_CASE("peel order is shift-invariant and the heap path agrees") {
  for (u64 seed = 1; seed <= 15; ++seed) {
    Graph g = tu::random_graph(60, 80, seed * 11);
    std::vector<u64> small = tu::random_loads(g.n, 9, seed);
    std::vector<u64> huge = small;
    for (u64& x : huge) x += (u64(1) << 40);  // beyond the bucket cap: heap fallback
    LoadState a{small}, b{huge};
    CHECK(load_peel_order(g, a).perm == load_peel_order(g, b).perm);
    CHECK(load_peel_order(g, a, true).perm == load_peel_order(g, b, true).perm);
  }
}

TEST_CASE("sort order is stable by (load, id)") {
  CHECK(load_sort_order({{5, 2, 7, 2}}).perm == std::vector<u32>{1, 3, 0, 2});
  CHECK(load_sort_order({{0, 0, 0, 0}}).perm == std::vector<u32>{0, 1, 2, 3});
  CHECK(load_sort_order({{1, 1, 0}}).perm == std::vector<u32>{2, 0, 1});
  CHECK(load_sort_order({{}}).perm.empty());

  SUBCASE("comparison fallback agrees with counting sort") {
    std::vector<u64> small = tu::random_loads(200, 50, 31337);
    std::vector<u64> huge = small;
    for (u64& x : huge) x += (u64(1) << 40);
    auto a = load_sort_order({small}).perm;
    auto b = load_sort_order({huge}).perm;
    CHECK(a == b);
  }
}

TEST_CASE("density and load update on the pinned examples") {
  SUBCASE("P3 in identity order") {
    Graph g = tu::path_graph(3);
    LoadState s = zeros(3);
    RefineOutcome out = density_and_load_update(g, identity(3), s, true);
    CHECK(out.rho_max == Density{2, 3});
    CHECK(out.best_prefix == 0);
    CHECK(out.width == 1);
    CHECK(s.loads == std::vector<u64>{1, 1, 0});
    REQUIRE(out.densities.size() == 3);
    CHECK(out.densities[0] == Density{2, 3});
    CHECK(out.densities[1] == Density{1, 2});
    CHECK(out.densities[2] == Density{0, 1});
  }
  SUBCASE("four-cycle-with-chord in identity order, tie goes to the smaller prefix") {
    Graph g = tu::four_chord();
    LoadState s = zeros(4);
    RefineOutcome out = density_and_load_update(g, identity(4), s, true);
    CHECK(out.rho_max == Density{1, 1});
    CHECK(out.best_prefix == 0);  // 4/4 ties 3/3; smaller index wins
    CHECK(s.loads == std::vector<u64>{1, 2, 1, 0});
    CHECK(out.width == 2);
    CHECK(out.densities[1] == Density{3, 3});
  }
  SUBCASE("K4 in any order") {
    Graph g = tu::clique(4);
    LoadState s = zeros(4);
    RefineOutcome out = density_and_load_update(g, identity(4), s);
    CHECK(out.rho_max == Density{3, 2});
    CHECK(s.loads == std::vector<u64>{3, 2, 1, 0});
    CHECK(out.width == 3);
  }
}

TEST_CASE("per-position densities equal direct suffix recomputation") {
  for (u64 seed = 1; seed <= 25; ++seed) {
    u64 n = 2 + densegraph::mix64(seed * 3 + 1) % 60;
    Graph g = tu::random_graph(n, 30 + seed * 23 % 300, seed ^ 0xbeef);
    std::vector<u64> loads = tu::random_loads(g.n, 6, seed);

    for (int which = 0; which < 2; ++which) {
      LoadState s{loads};
      Ordering o = which == 0 ? load_peel_order(g, s) : load_sort_order(s);
      LoadState upd{loads};
      RefineOutcome out = density_and_load_update(g, o, upd, true);
      auto direct = ref::suffix_densities(g, o.perm);
      REQUIRE(out.densities.size() == direct.size());
      u64 width_seen = 0, total = 0;
      for (u64 i = 0; i < g.n; ++i) {
        CHECK(out.densities[i] == direct[i]);
        u64 a = upd.loads[o.perm[i]] - loads[o.perm[i]];
        total += a;
        width_seen = std::max(width_seen, a);
      }
      CHECK(total == g.m);                          // every edge charged once
      CHECK(out.width == width_seen);
      CHECK(out.width <= g.stats().max_degree);     // width bound
      CHECK(out.rho_max == direct[out.best_prefix]);
      for (u64 i = 0; i < out.best_prefix; ++i) CHECK(direct[i] < out.rho_max);
    }
  }
}

TEST_CASE("malformed orderings are contract errors") {
  Graph g = tu::clique(3);
  LoadState s = zeros(3);
  Ordering short_perm{{0, 1}, OrderKind::peel_by_load};
  CHECK_THROWS_AS(density_and_load_update(g, short_perm, s), InvariantError);
  Ordering dup{{0, 1, 1}, OrderKind::peel_by_load};
  CHECK_THROWS_AS(density_and_load_update(g, dup, s), InvariantError);
  Ordering oob{{0, 1, 7}, OrderKind::peel_by_load};
  CHECK_THROWS_AS(density_and_load_update(g, oob, s), InvariantError);
  LoadState wrong = zeros(2);
  CHECK_THROWS_AS(density_and_load_update(g, identity(3), wrong), InvariantError);
  CHECK_THROWS_AS(load_peel_order(g, wrong), InvariantError);
}

TEST_CASE("charikar peel reproduces the pinned densities") {
  CHECK(charikar_peel(tu::star(5)).rho_max == Density{5, 6});
  CHECK(charikar_peel(tu::clique(4)).rho_max == Density{3, 2});
  CHECK(charikar_peel(tu::triangle_pendant()).rho_max == Density{1, 1});
}

TEST_CASE("charikar peel is a 2-approximation against the naive oracle") {
  for (u64 seed = 1; seed <= 30; ++seed) {
    Graph g = tu::random_graph(2 + seed % 11, 150 + seed * 31 % 700, seed * 9 + 4);
    ref::NaiveBest best = ref::densest_subset(g);
    RefineOutcome out = charikar_peel(g);
    // rho_max * 2 >= rho*
    CHECK(Density{out.rho_max.edges * 2, out.rho_max.verts} >= best.rho);
  }
}

TEST_CASE("ordering slack holds for produced orderings and flags bad ones") {
  for (u64 seed = 1; seed <= 20; ++seed) {
    Graph g = tu::random_graph(50, 100, seed * 29);
    std::vector<u64> loads = tu::random_loads(g.n, 20, seed);
    LoadState s{loads};
    Ordering peel = load_peel_order(g, s);
    Ordering sorted = load_sort_order(s);
    CHECK(slack_violations(peel, loads, g.stats().max_degree, 2000, seed) == 0);
    CHECK(slack_violations(sorted, loads, 0, 2000, seed) == 0);
  }
  // A descending-load ordering must trip the checker.
  std::vector<u64> loads{9, 7, 5, 3, 1, 0};
  Graph g = tu::clique(6);
  Ordering desc{{0, 1, 2, 3, 4, 5}, OrderKind::sort_by_load};
  CHECK(slack_violations(desc, loads, 0, 4000, 1) > 0);
}

TEST_CASE("refinement kernels are deterministic across thread counts") {
  Graph g = tu::random_graph(300, 60, 777);
  Graph big = tu::star(3000);
  std::vector<u64> loads = tu::random_loads(g.n, 15, 777);

  set_threads(1);
  Ordering o1 = load_peel_order(g, {loads});
  LoadState s1{loads};
  RefineOutcome r1 = density_and_load_update(g, o1, s1);
  RefineOutcome b1 = charikar_peel(big);
  set_threads(4);
  Ordering o4 = load_peel_order(g, {loads});
  LoadState s4{loads};
  RefineOutcome r4 = density_and_load_update(g, o4, s4);
  RefineOutcome b4 = charikar_peel(big);
  set_threads(0);

  CHECK(o1.perm == o4.perm);
  CHECK(s1.loads == s4.loads);
  CHECK(r1.rho_max == r4.rho_max);
  CHECK(r1.best_prefix == r4.best_prefix);
  CHECK(r1.width == r4.width);
  CHECK(b1.rho_max == b4.rho_max);
  CHECK(b1.width == b4.width);
}
