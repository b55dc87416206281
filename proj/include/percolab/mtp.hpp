#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "percolab/clusters.hpp"
#include "percolab/estimate.hpp"
#include "percolab/field.hpp"
#include "percolab/graph.hpp"

namespace percolab {

// Nonnegative pair weight f(u,v), expected to be invariant under the graph's
// automorphism group.
struct TransportFunction {
  std::function<double(Vertex, Vertex)> evaluator;
};

// Random transport on a torus that is invariant by construction: the weight
// depends only on the displacement class of v - u.
TransportFunction displacement_invariant_transport(const FiniteGraph& torus, const Seed& seed);

// Exhaustively verifies transitivity of the listed group and invariance of f,
// then returns (sum_x f(o,x), sum_x f(x,o)). Equal for invariant f on a
// finite transitive graph.
std::pair<double, double> mtp_check(const FiniteGraph& g, const TransportFunction& f);

// Gamma_n = infinite_proxy(omega_{p_n}) on a shared field, p_n descending.
struct GammaSequence {
  std::vector<double> p_values;
  std::vector<Configuration> configs;
};

GammaSequence make_gamma_sequence(const FiniteGraph& g, const LabelField& field,
                                  const std::vector<double>& p_values);

// Monte Carlo P[o in Gamma(p_n)] for each p_n, coupled through one field per
// replica so the estimates are pathwise monotone in p_n.
std::vector<EstimateCI> estimate_origin_in_gamma(const FiniteGraph& g,
                                                 const std::vector<double>& p_values,
                                                 std::uint64_t n_samples, const Seed& seed);

// Encounter points: open vertices in a boundary-touching cluster whose
// removal leaves at least three boundary-touching components adjacent to
// them.
std::vector<Vertex> find_encounter_points(const FiniteGraph& g, const Configuration& omega);

struct Forest {
  std::vector<Vertex> vertices;                      // Y, ascending
  std::vector<std::pair<Vertex, Vertex>> edges;      // unordered pairs, (min,max), sorted
  std::vector<std::uint32_t> degree;                 // aligned with `vertices`
  bool acyclic = true;                               // reported, not assumed
};

// Nearest-encounter-point forest: for every v in Y and every boundary-touching
// component Z of omega \ {v} adjacent to v, an edge from v to the x-minimal
// member of Q(Z,v), the encounter points of Z closest to v in the open
// subgraph.
Forest build_forest(const FiniteGraph& g, const Configuration& omega,
                    const std::vector<double>& x_labels);

// Keep an edge iff both endpoints lie in one component of omega \ gamma.
Forest restrict_forest(const Forest& f, const FiniteGraph& g, const Configuration& omega,
                       const Configuration& gamma);

// Which vertices count as the component boundary in the forest inequality.
//   KMembersOnly: vertices of K_n(v) with an F-neighbour outside K_n(v).
//   AllForestVertices: any forest vertex with an F-neighbour outside K_n(v).
enum class BoundaryReading { KMembersOnly, AllForestVertices };

struct BoundaryIneqOptions {
  std::uint64_t n_samples = 400;
  Seed seed;
  BoundaryReading reading = BoundaryReading::AllForestVertices;
};

struct BoundaryIneqRow {
  double p_gamma = 0.0;          // p_n defining Gamma_n
  EstimateCI lhs;                // P[o in Y]
  EstimateCI rhs;                // P[o in Y and o in boundary of K_n(o)]
  EstimateCI origin_in_gamma;    // P[o in Gamma_n]
  bool holds_within_3sigma = false;  // lhs <= 2 rhs + 3 sigma(combined)
};

// Monte Carlo estimates of both sides of the forest-boundary inequality for a
// descending sequence of Gamma intensities, sharing the coupling field per
// replica across the sequence.
std::vector<BoundaryIneqRow> boundary_inequality_stats(const FiniteGraph& g, double p,
                                                       const std::vector<double>& gamma_p,
                                                       const BoundaryIneqOptions& opt);

// xi construction for the unique-cluster regime: all v with d_G(v,U) <= n
// whose nearest-point sets (of v and its neighbours) lie inside one component
// of omega \ gamma. Requires omega to have exactly one boundary-touching
// cluster U.
Configuration build_xi(const FiniteGraph& g, const Configuration& omega,
                       const Configuration& gamma, int radius);

}  // namespace percolab
