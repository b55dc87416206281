#pragma once

#include <vector>

#include "percolab/clusters.hpp"
#include "percolab/estimate.hpp"
#include "percolab/field.hpp"
#include "percolab/graph.hpp"

namespace percolab {

// Signals a missing bracket in a threshold search (maps to CLI exit code 3).
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One realization of the self-destructive process:
//   phi = (omega_p \ destroyed) u reinforcement,
// where destroyed is the boundary-touching proxy of the infinite part of
// omega_p and the reinforcement is an independent Bernoulli(delta) pattern.
struct SdpSample {
  double p = 0.0;
  double delta = 0.0;
  Configuration omega_p;
  Configuration destroyed;
  Configuration reinforcement;
  Configuration phi;
};

// `seed.replica` selects the replica; the primary and reinforcement streams
// are derived internally so the two patterns are independent.
SdpSample make_sdp_sample(const FiniteGraph& g, const Seed& seed, double p, double delta);

enum class ThetaEvent { OriginInInfiniteProxy, NAtLeastOne };

struct ThetaOptions {
  ThetaEvent event = ThetaEvent::OriginInInfiniteProxy;
  std::uint64_t n_samples = 10000;
  Seed seed;
  int threads = 1;
};

// Monte Carlo frequency of the event on phi(p, delta) over independent
// replicas seeded (seed.master, replica).
EstimateCI estimate_theta(const FiniteGraph& g, double p, double delta, const ThetaOptions& opt);

struct DeltaCOptions {
  ThetaEvent event = ThetaEvent::OriginInInfiniteProxy;
  double eps = 0.02;          // event-frequency level defining the finite-volume threshold
  std::uint64_t n_samples = 2000;  // fresh replicas per probed delta
  double tol = 0.01;          // stop when the delta bracket is narrower than this
  Seed seed;
  int threads = 1;
};

// Bisection on delta of the map delta -> theta-hat(p, delta) against the eps
// level. Reported value = bracket midpoint, CI = final bracket.
EstimateCI estimate_delta_c(const FiniteGraph& g, double p, const DeltaCOptions& opt);

struct RemovedPcOptions {
  ThetaEvent event = ThetaEvent::OriginInInfiniteProxy;
  double eps = 0.02;
  std::uint64_t n_replicas = 20;       // outer replicas (independent destroyed sets)
  std::uint64_t n_inner = 400;         // fresh patterns per probed q
  double tol = 0.01;
  Seed seed;
  int threads = 1;
};

// Per outer replica: sample omega_p, remove its boundary-touching part, then
// bisect the intensity q at which a fresh Bernoulli(q) pattern on the removed
// graph reaches the eps level of the event. Replicas that cannot reach the
// level even at q = 1 (origin removed, or boundary unreachable through the
// removed graph) contribute a threshold right-censored at 1. A bracket error
// is raised only when the origin was removed in every replica, since then no
// search is defined at all. Aggregated as a replica mean.
EstimateCI removed_graph_threshold(const FiniteGraph& g, double p, const RemovedPcOptions& opt);

struct FreshBirthOptions {
  double p_c_ref = 0.5;  // reference critical point of the graph family
  std::uint64_t n_samples = 10000;
  Seed seed;
  int threads = 1;
};

// Frequency of the event that omega_{p_c_ref + delta} \ infinite_proxy(omega_p)
// still contains a boundary-touching component, with both level sets read off
// the same field (the simultaneous coupling).
EstimateCI fresh_birth_probe(const FiniteGraph& g, double p, double delta,
                             const FreshBirthOptions& opt);

// --- finite-size analysis on rooted trees -----------------------------------

// Plain-percolation origin-reaches-depth-L frequencies for several depths at
// once, sharing one lazily evaluated field per replica. Identical in law to
// origin-percolates on rooted_tree(b, L) for each L.
std::vector<EstimateCI> plain_tree_theta_depths(int b, const std::vector<int>& depths, double p,
                                                std::uint64_t n_samples, const Seed& seed,
                                                int threads = 1);

struct PcCurvePoint {
  double p = 0.0;
  std::vector<double> theta;  // one per depth
  double curvature = 0.0;     // second difference of 1/theta across the depths
};

struct PcEstimate {
  double p_hat = 0.0;
  double p_lo = 0.0;  // grid cell containing the sign change
  double p_hi = 0.0;
  std::vector<PcCurvePoint> curve;
};

// Threshold localization from three theta_L curves: at criticality 1/theta_L
// is asymptotically linear in L, subcritical curves are convex and
// supercritical ones concave, so the sign change of the second difference
// brackets p_c. Requires exactly three ascending depths and an ascending grid.
PcEstimate estimate_pc_curvature(int b, const std::vector<int>& depths,
                                 const std::vector<double>& p_grid, std::uint64_t n_samples,
                                 const Seed& seed, int threads = 1);

}  // namespace percolab
