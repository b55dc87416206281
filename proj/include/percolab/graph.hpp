#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace percolab {

using Vertex = std::uint32_t;

enum class GraphFamily { RootedTree, RegularTree, Torus, TreeCycle };

std::string family_name(GraphFamily f);

// Finite truncation of an (in principle infinite) graph. The marked boundary
// stands in for infinity: downstream code treats boundary-touching clusters
// as the finite-volume proxy for infinite clusters.
struct FiniteGraph {
  GraphFamily family = GraphFamily::RootedTree;
  std::vector<int> params;  // family parameters, in declaration order

  std::uint32_t vertex_count = 0;
  std::vector<std::vector<Vertex>> adjacency;  // sorted, symmetric, simple
  std::vector<std::uint8_t> is_boundary;
  std::vector<Vertex> boundary;  // ascending
  Vertex origin = 0;

  // Present only for finite vertex-transitive families (torus). Each entry is
  // a vertex permutation; generators, not the full group.
  std::vector<std::vector<Vertex>> automorphisms;

  // Stable identity used to detect configurations applied to the wrong graph.
  std::uint64_t id = 0;

  std::uint32_t degree(Vertex v) const { return static_cast<std::uint32_t>(adjacency[v].size()); }
  std::uint64_t edge_count() const;
  std::string describe() const;  // "family,params..." tag for CSV output
};

// Thrown limits / misuse map onto these; the CLI translates them to exit codes.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultVertexLimit = 1u << 24;

// Rooted b-ary tree of depth L, breadth-first vertex order from the root.
// Boundary = depth-L vertices, origin = root.
FiniteGraph build_rooted_tree(int b, int L, std::uint64_t vertex_limit = kDefaultVertexLimit);

// Ball of radius L in the d-regular tree; origin = center, boundary = sphere
// of radius L. Breadth-first order from the center.
FiniteGraph build_regular_tree(int d, int L, std::uint64_t vertex_limit = kDefaultVertexLimit);

// d-dimensional discrete torus with side n, row-major vertex order.
// Boundary is empty; translation generators populate `automorphisms`.
FiniteGraph build_torus(int d, int n, std::uint64_t vertex_limit = kDefaultVertexLimit);

// Product of rooted_tree(b,L) with a k-cycle. Vertex (t, c) has id
// t * k + c. Boundary = depth-L tree layer times the cycle; origin = (root,0).
FiniteGraph build_tree_cycle(int b, int L, int k, std::uint64_t vertex_limit = kDefaultVertexLimit);

// True iff `perm` maps adjacency onto adjacency (exhaustive check).
bool is_automorphism(const FiniteGraph& g, const std::vector<Vertex>& perm);

// Closure of g.automorphisms under composition (includes identity).
std::vector<std::vector<Vertex>> automorphism_group(const FiniteGraph& g);

// True iff the closure of the listed generators acts transitively.
bool group_is_transitive(const FiniteGraph& g);

enum class SubsetFamily { BallsAroundOrigin, Subtrees, PathSegments };

struct IsoEntry {
  std::string descriptor;
  std::uint64_t subset_size = 0;
  std::uint64_t boundary_size = 0;  // |{w in W : some neighbor of w outside W}|
  double ratio = 0.0;
};

struct IsoProfile {
  std::vector<IsoEntry> entries;  // ordered by subset_size
};

// Exact |d_V W| / |W| over the selected subset family.
//   BallsAroundOrigin: W = ball of radius r around origin, r = 0..ecc.
//   Subtrees: rooted trees only; W = full subtree of depth t at the root.
//   PathSegments: torus(1,n) only; W = {0..k-1}, k = 1..n-1.
IsoProfile isoperimetric_profile(const FiniteGraph& g, SubsetFamily family);

}  // namespace percolab
