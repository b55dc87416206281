#pragma once

#include <vector>

#include "percolab/field.hpp"
#include "percolab/graph.hpp"

namespace percolab {

// Connected-component decomposition of an open pattern. Components touching
// the truncation boundary are the finite-volume stand-in for infinite
// clusters.
struct ClusterLabeling {
  std::uint64_t graph_id = 0;
  std::vector<std::int32_t> component_id;   // per vertex; -1 if closed
  std::vector<std::uint64_t> sizes;         // per component
  std::vector<std::uint8_t> touches_boundary;
  std::uint32_t n_infinite = 0;             // boundary-touching components
};

ClusterLabeling label_clusters(const FiniteGraph& g, const Configuration& omega);

// Open vertices whose component touches the boundary (C-infinity proxy).
Configuration infinite_proxy(const FiniteGraph& g, const ClusterLabeling& l,
                             const Configuration& omega);

std::uint32_t count_infinite(const ClusterLabeling& l);

enum class SweepStatistic { OriginPercolates, NInfinite, InfiniteDensity };

struct SweepPoint {
  double p = 0.0;
  double value = 0.0;
};

// Evaluate the statistic on level_set(f, p) for every grid point in one
// incremental pass (vertices inserted in increasing label order, components
// maintained in a union-find). Output is identical to recomputing
// label_clusters at each p independently.
std::vector<SweepPoint> sweep_curve(const FiniteGraph& g, const LabelField& f,
                                    const std::vector<double>& grid, SweepStatistic stat);

}  // namespace percolab
