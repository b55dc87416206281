#include <doctest.h>

#include <algorithm>
#include <set>

#include "percolab/graph.hpp"

using namespace percolab;

namespace {

void check_simple_symmetric(const FiniteGraph& g) {
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    const auto& nb = g.adjacency[v];
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());  // no duplicates
    for (Vertex u : nb) {
      CHECK(u != v);  // no self loops
      const auto& back = g.adjacency[u];
      CHECK(std::binary_search(back.begin(), back.end(), v));
    }
  }
  std::uint64_t marked = 0;
  for (Vertex v = 0; v < g.vertex_count; ++v) marked += g.is_boundary[v];
  CHECK(marked == g.boundary.size());
}

}  // namespace

TEST_CASE("rooted tree builder") {
  auto g = build_rooted_tree(2, 1);
  CHECK(g.vertex_count == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.origin == 0);
  CHECK(g.boundary == std::vector<Vertex>{1, 2});
  check_simple_symmetric(g);

  auto single = build_rooted_tree(3, 0);
  CHECK(single.vertex_count == 1);
  CHECK(single.edge_count() == 0);
  CHECK(single.boundary == std::vector<Vertex>{0});

  auto deep = build_rooted_tree(2, 10);
  CHECK(deep.vertex_count == 2047);
  CHECK(deep.edge_count() == 2046);
  CHECK(deep.boundary.size() == 1024);
  // heap numbering: children of i are 2i+1, 2i+2
  CHECK(deep.adjacency[0] == std::vector<Vertex>{1, 2});
  CHECK(deep.adjacency[5] == std::vector<Vertex>{2, 11, 12});
  CHECK(deep.describe() == "rooted_tree_2_10");
}

TEST_CASE("regular tree builder") {
  CHECK(build_regular_tree(3, 1).vertex_count == 4);
  CHECK(build_regular_tree(3, 2).vertex_count == 10);
  CHECK(build_regular_tree(4, 0).vertex_count == 1);

  auto g = build_regular_tree(3, 3);
  check_simple_symmetric(g);
  CHECK(g.degree(g.origin) == 3);
  for (Vertex v : g.boundary) CHECK(g.degree(v) == 1);
  // interior non-origin vertices have full degree
  for (Vertex v = 1; v < g.vertex_count; ++v)
    if (!g.is_boundary[v]) CHECK(g.degree(v) == 3);
}

TEST_CASE("torus builder") {
  auto c4 = build_torus(1, 4);
  CHECK(c4.vertex_count == 4);
  CHECK(c4.boundary.empty());
  for (Vertex v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);
  check_simple_symmetric(c4);

  auto t = build_torus(2, 3);
  CHECK(t.vertex_count == 9);
  for (Vertex v = 0; v < 9; ++v) CHECK(t.degree(v) == 4);
  CHECK(t.edge_count() == 18);
  check_simple_symmetric(t);

  auto t4 = build_torus(2, 4);
  for (const auto& gen : t4.automorphisms) CHECK(is_automorphism(t4, gen));
  auto group = automorphism_group(t4);
  CHECK(group.size() == 16);  // all translations of the 4x4 torus
  CHECK(group_is_transitive(t4));
}

TEST_CASE("tree-cycle builder") {
  auto g = build_tree_cycle(2, 1, 3);
  CHECK(g.vertex_count == 9);
  check_simple_symmetric(g);
  // (root, c) has 2 cycle neighbours + 2 children
  CHECK(g.degree(0) == 4);
  CHECK(g.origin == 0);

  auto cyc = build_tree_cycle(2, 0, 4);  // single tree vertex: plain 4-cycle
  CHECK(cyc.vertex_count == 4);
  for (Vertex v = 0; v < 4; ++v) CHECK(cyc.degree(v) == 2);

  auto big = build_tree_cycle(2, 2, 3);
  CHECK(big.vertex_count == 21);
  check_simple_symmetric(big);
  // depth-1 tree vertices: 1 parent + 2 children + 2 cycle neighbours
  CHECK(big.degree(1 * 3) == 5);
  // boundary = depth-2 layer times the cycle
  CHECK(big.boundary.size() == 12);
}

TEST_CASE("vertex limit enforced") {
  CHECK_THROWS_AS(build_rooted_tree(2, 30), ResourceError);
  CHECK_THROWS_AS(build_rooted_tree(2, 10, 100), ResourceError);
  CHECK_THROWS_AS(build_torus(2, 100, 500), ResourceError);
}

TEST_CASE("isoperimetric profile: balls around the origin") {
  auto g = build_rooted_tree(2, 4);
  auto prof = isoperimetric_profile(g, SubsetFamily::BallsAroundOrigin);
  REQUIRE(!prof.entries.empty());
  // W = {origin}: the origin has neighbours outside, ratio 1
  CHECK(prof.entries[0].subset_size == 1);
  CHECK(prof.entries[0].ratio == doctest::Approx(1.0));
  // the full graph has empty vertex boundary
  CHECK(prof.entries.back().subset_size == g.vertex_count);
  CHECK(prof.entries.back().ratio == doctest::Approx(0.0));
}

TEST_CASE("isoperimetric profile: path segments of a cycle") {
  auto g = build_torus(1, 10);
  auto prof = isoperimetric_profile(g, SubsetFamily::PathSegments);
  REQUIRE(prof.entries.size() == 9);
  CHECK(prof.entries[0].subset_size == 1);
  CHECK(prof.entries[0].ratio == doctest::Approx(1.0));
  for (std::size_t k = 2; k <= 9; ++k) {
    CHECK(prof.entries[k - 1].subset_size == k);
    CHECK(prof.entries[k - 1].boundary_size == 2);  // the two segment ends
    CHECK(prof.entries[k - 1].ratio == doctest::Approx(2.0 / double(k)));
  }
  CHECK_THROWS_AS(isoperimetric_profile(build_torus(2, 4), SubsetFamily::PathSegments),
                  UsageError);
}

TEST_CASE("isoperimetric profile: subtrees stay boundary-heavy") {
  auto g = build_rooted_tree(2, 9);
  auto prof = isoperimetric_profile(g, SubsetFamily::Subtrees);
  REQUIRE(prof.entries.size() >= 8);
  // depth-t subtree of the binary tree: |W| = 2^{t+1}-1, boundary = 2^t leaves
  for (const auto& e : prof.entries) {
    if (e.subset_size == 15) {
      CHECK(e.boundary_size == 8);
      CHECK(e.ratio == doctest::Approx(8.0 / 15.0));
    }
  }
  // ratio 2^t/(2^{t+1}-1) > 0.4 at every proper depth: no flat subsets
  for (const auto& e : prof.entries)
    if (e.subset_size < g.vertex_count) CHECK(e.ratio > 0.4);
  CHECK_THROWS_AS(isoperimetric_profile(build_torus(2, 4), SubsetFamily::Subtrees), UsageError);
}

TEST_CASE("automorphism helpers reject non-automorphisms") {
  auto t = build_torus(1, 5);
  std::vector<Vertex> identity{0, 1, 2, 3, 4};
  CHECK(is_automorphism(t, identity));
  std::vector<Vertex> bad{0, 2, 1, 3, 4};  // swaps 1,2 only: breaks the cycle
  CHECK(!is_automorphism(t, bad));
}
