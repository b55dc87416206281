#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "percolab/mtp.hpp"
#include "test_support.hpp"

using namespace percolab;
using namespace percolab::testsupport;

TEST_CASE("mass-transport identity on hand-picked transports") {
  auto g = build_torus(2, 3);

  TransportFunction adjacency{[&](Vertex u, Vertex v) {
    const auto& nb = g.adjacency[u];
    return std::binary_search(nb.begin(), nb.end(), v) ? 1.0 : 0.0;
  }};
  auto [out_a, in_a] = mtp_check(g, adjacency);
  CHECK(out_a == doctest::Approx(4.0));  // degree of the origin
  CHECK(in_a == doctest::Approx(4.0));

  TransportFunction diagonal{[](Vertex u, Vertex v) { return u == v ? 1.0 : 0.0; }};
  auto [out_d, in_d] = mtp_check(g, diagonal);
  CHECK(out_d == doctest::Approx(1.0));
  CHECK(in_d == doctest::Approx(1.0));
}

TEST_CASE("mass-transport check rejects non-invariant transports") {
  auto g = build_torus(1, 6);
  TransportFunction lopsided{[](Vertex u, Vertex v) { return (u == 0 && v == 1) ? 1.0 : 0.0; }};
  CHECK_THROWS_AS(mtp_check(g, lopsided), UsageError);
}

TEST_CASE("mass-transport check requires a transitive group") {
  auto g = build_rooted_tree(2, 3);  // no listed automorphisms
  TransportFunction f{[](Vertex, Vertex) { return 1.0; }};
  CHECK_THROWS_AS(mtp_check(g, f), UsageError);
}

TEST_CASE("displacement transports balance exactly") {
  for (auto g : {build_torus(1, 8), build_torus(2, 4)}) {
    for (std::uint64_t r = 0; r < 20; ++r) {
      auto f = displacement_invariant_transport(g, Seed{99, Stream::ForestLabels, r});
      auto [out, in] = mtp_check(g, f);
      CHECK(std::abs(out - in) <= 1e-12);
      CHECK(out >= 0.0);
    }
  }
}

TEST_CASE("gamma sequences") {
  auto g = build_rooted_tree(2, 6);
  auto f = sample_field(g, {7, Stream::PrimaryField, 0});
  auto seq = make_gamma_sequence(g, f, {1.0, 0.7, 0.0});
  REQUIRE(seq.configs.size() == 3);
  CHECK(seq.configs[0].count == g.vertex_count);  // everything percolates at p=1
  CHECK(seq.configs[2].count == 0);
  CHECK(is_subset(seq.configs[1], seq.configs[0]));  // nested along the coupling
  CHECK_THROWS_AS(make_gamma_sequence(g, f, {0.5, 0.7}), UsageError);  // must descend

  auto est = estimate_origin_in_gamma(g, {0.9, 0.7, 0.6}, 500, Seed{8, Stream::PrimaryField, 0});
  REQUIRE(est.size() == 3);
  CHECK(est[0].value >= est[1].value);
  CHECK(est[1].value >= est[2].value);
}

TEST_CASE("encounter points: hand-checked patterns") {
  // fully open ball of the 3-regular tree: every interior vertex separates
  // three boundary-reaching branches
  auto g = build_regular_tree(3, 2);
  auto y = find_encounter_points(g, full_config(g));
  CHECK(y == std::vector<Vertex>{0, 1, 2, 3});

  // a bare path has no degree-3 vertices
  auto path = make_custom_graph(4, {{0, 1}, {1, 2}, {2, 3}}, {0, 3}, 1);
  CHECK(find_encounter_points(path, full_config(path)).empty());

  // star with three arms of length 2, tips on the boundary: only the centre
  auto star = make_custom_graph(
      7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}}, {2, 4, 6}, 0);
  CHECK(find_encounter_points(star, full_config(star)) == std::vector<Vertex>{0});
  // close one tip: that arm no longer reaches the boundary
  auto partial = make_config(star, {0, 1, 3, 4, 5, 6});
  CHECK(find_encounter_points(star, partial).empty());
}

TEST_CASE("forest construction: hand-checked pattern") {
  auto g = build_regular_tree(3, 2);
  std::vector<double> x(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) x[v] = uniform01({5, Stream::ForestLabels, 0}, v);
  auto f = build_forest(g, full_config(g), x);
  CHECK(f.vertices == std::vector<Vertex>{0, 1, 2, 3});
  // each depth-1 vertex pairs with the centre; leaf components hold no
  // encounter points and contribute nothing
  std::vector<std::pair<Vertex, Vertex>> want{{0, 1}, {0, 2}, {0, 3}};
  CHECK(f.edges == want);
  CHECK(f.degree == std::vector<std::uint32_t>{3, 1, 1, 1});
  CHECK(f.acyclic);
}

TEST_CASE("encounter points and forests match a naive reference") {
  // different algorithm, exhaustive comparison over random open patterns
  auto g = build_tree_cycle(2, 1, 3);  // 9 vertices
  std::vector<double> x(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) x[v] = uniform01({6, Stream::ForestLabels, 0}, v);

  Seed s{123, Stream::PrimaryField, 0};
  for (std::uint64_t r = 0; r < 200; ++r) {
    auto field = sample_field(g, s.with_replica(r));
    auto omega = level_set(g, field, 0.7);
    auto fast_y = find_encounter_points(g, omega);
    CHECK(fast_y == naive_encounter_points(g, omega));
    auto fast_f = build_forest(g, omega, x);
    std::set<std::pair<Vertex, Vertex>> fast_edges(fast_f.edges.begin(), fast_f.edges.end());
    CHECK(fast_edges == naive_forest_edges(g, omega, x));
  }
}

TEST_CASE("forest restriction") {
  auto g = build_regular_tree(3, 2);
  std::vector<double> x(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) x[v] = uniform01({5, Stream::ForestLabels, 0}, v);
  auto omega = full_config(g);
  auto f = build_forest(g, omega, x);

  auto same = restrict_forest(f, g, omega, empty_config(g));
  CHECK(same.edges == f.edges);
  auto gone = restrict_forest(f, g, omega, full_config(g));
  CHECK(gone.edges.empty());

  // removing the centre disconnects every pair
  auto cut = restrict_forest(f, g, omega, make_config(g, {0}));
  CHECK(cut.edges.empty());
  // removing a leaf changes nothing
  auto leaf = restrict_forest(f, g, omega, make_config(g, {9}));
  CHECK(leaf.edges == f.edges);
}

TEST_CASE("boundary inequality: degenerate levels") {
  auto g = build_regular_tree(3, 4);
  BoundaryIneqOptions opt;
  opt.n_samples = 150;
  opt.seed = Seed{17, Stream::PrimaryField, 0};

  // gamma at level 0 removes nothing: forest neighbours stay in the origin's
  // component, so the right-hand event never fires
  auto rows0 = boundary_inequality_stats(g, 0.8, {0.0}, opt);
  REQUIRE(rows0.size() == 1);
  CHECK(rows0[0].rhs.value == doctest::Approx(0.0));

  // gamma at level 1 removes everything: the right side degenerates to
  // "o has a forest neighbour", which contains every edge-carrying o in Y
  auto rows1 = boundary_inequality_stats(g, 0.9, {1.0}, opt);
  REQUIRE(rows1.size() == 1);
  CHECK(rows1[0].rhs.value <= rows1[0].lhs.value);
  CHECK(rows1[0].origin_in_gamma.value == doctest::Approx(1.0));
  CHECK(rows1[0].holds_within_3sigma);
}

TEST_CASE("xi construction") {
  // open path 2-3-4-5-6 with boundary at 6; U is that unique cluster
  auto g = make_custom_graph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}, {6}, 0);
  auto omega = make_config(g, {2, 3, 4, 5, 6});

  auto ball = build_xi(g, omega, empty_config(g), 1);
  // with nothing removed: every vertex within distance 1 of U qualifies
  CHECK(ball.contains(1));
  CHECK(ball.contains(2));
  CHECK(ball.contains(6));
  CHECK(!ball.contains(0));  // distance 2

  auto zero = build_xi(g, omega, empty_config(g), 0);
  CHECK(is_subset(zero, omega));  // radius 0 stays inside U

  // remove vertex 3: only vertices whose nearest-point neighbourhoods stay in
  // one piece of omega \ {3} survive
  auto xi = build_xi(g, omega, make_config(g, {3}), 1);
  std::vector<std::uint8_t> want(7, 0);
  want[1] = want[5] = want[6] = 1;
  CHECK(xi.members == want);

  // two boundary-touching clusters: outside the regime this models
  auto g2 = make_custom_graph(4, {{0, 1}, {2, 3}}, {0, 3}, 1);
  auto two = make_config(g2, {0, 1, 2, 3});
  CHECK_THROWS_AS(build_xi(g2, two, empty_config(g2), 1), UsageError);
}
