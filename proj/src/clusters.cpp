#include "percolab/clusters.hpp"

#include <algorithm>
#include <numeric>

namespace percolab {

namespace {

struct DisjointSet {
  std::vector<std::int32_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n, -1) {}

  std::int32_t find(std::int32_t x) {
    std::int32_t root = x;
    while (parent[root] >= 0) root = parent[root];
    while (parent[x] >= 0) {
      std::int32_t next = parent[x];
      parent[x] = root;
      x = next;
    }
    return root;
  }

  // union by size (parent of a root stores -size); returns the new root
  std::int32_t merge(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (parent[a] > parent[b]) std::swap(a, b);
    parent[a] += parent[b];
    parent[b] = a;
    return a;
  }
};

}  // namespace

ClusterLabeling label_clusters(const FiniteGraph& g, const Configuration& omega) {
  if (omega.graph_id != g.id) throw UsageError("label_clusters: configuration on different graph");
  ClusterLabeling l;
  l.graph_id = g.id;
  l.component_id.assign(g.vertex_count, -1);
  DisjointSet ds(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (!omega.members[v]) continue;
    for (Vertex u : g.adjacency[v])
      if (u < v && omega.members[u]) ds.merge(static_cast<std::int32_t>(v), static_cast<std::int32_t>(u));
  }
  // dense component ids in order of smallest member vertex
  std::vector<std::int32_t> root_to_id(g.vertex_count, -1);
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (!omega.members[v]) continue;
    std::int32_t r = ds.find(static_cast<std::int32_t>(v));
    if (root_to_id[r] < 0) {
      root_to_id[r] = static_cast<std::int32_t>(l.sizes.size());
      l.sizes.push_back(0);
      l.touches_boundary.push_back(0);
    }
    std::int32_t id = root_to_id[r];
    l.component_id[v] = id;
    ++l.sizes[id];
    if (g.is_boundary[v]) l.touches_boundary[id] = 1;
  }
  l.n_infinite = 0;
  for (std::uint8_t t : l.touches_boundary) l.n_infinite += t;
  return l;
}

Configuration infinite_proxy(const FiniteGraph& g, const ClusterLabeling& l,
                             const Configuration& omega) {
  if (l.graph_id != g.id || omega.graph_id != g.id)
    throw UsageError("infinite_proxy: labeling/configuration mismatch");
  Configuration out = empty_config(g);
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (!omega.members[v]) continue;
    std::int32_t id = l.component_id[v];
    if (id < 0) throw UsageError("infinite_proxy: labeling does not cover configuration");
    if (l.touches_boundary[id]) {
      out.members[v] = 1;
      ++out.count;
    }
  }
  return out;
}

std::uint32_t count_infinite(const ClusterLabeling& l) { return l.n_infinite; }

std::vector<SweepPoint> sweep_curve(const FiniteGraph& g, const LabelField& f,
                                    const std::vector<double>& grid, SweepStatistic stat) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 1.0) throw UsageError("sweep_curve: grid point outside [0,1]");
    if (i > 0 && grid[i] < grid[i - 1]) throw UsageError("sweep_curve: grid must be ascending");
  }
  // insertion order: by label, ties by vertex id
  std::vector<Vertex> order(g.vertex_count);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (f.labels[a] != f.labels[b]) return f.labels[a] < f.labels[b];
    return a < b;
  });

  DisjointSet ds(g.vertex_count);
  std::vector<std::uint8_t> open(g.vertex_count, 0);
  std::vector<std::uint8_t> root_touches(g.vertex_count, 0);
  std::uint32_t n_infinite = 0;
  std::uint64_t open_count = 0, infinite_vertices = 0;

  auto merge_components = [&](std::int32_t a, std::int32_t b) {
    std::int32_t ra = ds.find(a), rb = ds.find(b);
    if (ra == rb) return;
    bool ta = root_touches[ra], tb = root_touches[rb];
    std::uint64_t sa = static_cast<std::uint64_t>(-ds.parent[ra]);
    std::uint64_t sb = static_cast<std::uint64_t>(-ds.parent[rb]);
    std::int32_t r = ds.merge(ra, rb);
    if (ta && tb) {
      --n_infinite;
    } else if (ta != tb) {
      infinite_vertices += ta ? sb : sa;
    }
    root_touches[r] = static_cast<std::uint8_t>(ta || tb);
  };

  auto insert_vertex = [&](Vertex v) {
    open[v] = 1;
    ++open_count;
    std::int32_t sv = static_cast<std::int32_t>(v);
    root_touches[ds.find(sv)] = 0;  // singleton, then flag below
    if (g.is_boundary[v]) {
      root_touches[sv] = 1;
      ++n_infinite;
      ++infinite_vertices;
    }
    for (Vertex u : g.adjacency[v])
      if (open[u]) merge_components(sv, static_cast<std::int32_t>(u));
  };

  auto statistic_value = [&]() -> double {
    switch (stat) {
      case SweepStatistic::OriginPercolates: {
        if (!open[g.origin]) return 0.0;
        return root_touches[ds.find(static_cast<std::int32_t>(g.origin))] ? 1.0 : 0.0;
      }
      case SweepStatistic::NInfinite:
        return static_cast<double>(n_infinite);
      case SweepStatistic::InfiniteDensity:
        return static_cast<double>(infinite_vertices) / static_cast<double>(g.vertex_count);
    }
    return 0.0;
  };

  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  std::size_t next = 0;
  for (double p : grid) {
    while (next < order.size() && f.labels[order[next]] <= p) insert_vertex(order[next++]);
    out.push_back({p, statistic_value()});
  }
  return out;
}

}  // namespace percolab
