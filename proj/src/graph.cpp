#include "percolab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "percolab/rng.hpp"

namespace percolab {

std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::RootedTree: return "rooted_tree";
    case GraphFamily::RegularTree: return "regular_tree";
    case GraphFamily::Torus: return "torus";
    case GraphFamily::TreeCycle: return "tree_cycle";
  }
  return "?";
}

std::uint64_t FiniteGraph::edge_count() const {
  std::uint64_t deg_sum = 0;
  for (const auto& nb : adjacency) deg_sum += nb.size();
  return deg_sum / 2;
}

std::string FiniteGraph::describe() const {
  std::ostringstream os;
  os << family_name(family);
  for (int p : params) os << "_" << p;
  return os.str();
}

namespace {

void check_limit(std::uint64_t count, std::uint64_t limit) {
  if (count > limit) {
    throw ResourceError("graph size " + std::to_string(count) +
                        " exceeds vertex limit " + std::to_string(limit));
  }
}

void add_edge(FiniteGraph& g, Vertex u, Vertex v) {
  g.adjacency[u].push_back(v);
  g.adjacency[v].push_back(u);
}

void finalize(FiniteGraph& g) {
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  g.boundary.clear();
  for (Vertex v = 0; v < g.vertex_count; ++v)
    if (g.is_boundary[v]) g.boundary.push_back(v);
  // stable identity from family + params
  std::uint64_t h = detail::mix64(static_cast<std::uint64_t>(g.family) + 1);
  for (int p : g.params) h = detail::mix64(h ^ static_cast<std::uint64_t>(p));
  g.id = h;
}

}  // namespace

FiniteGraph build_rooted_tree(int b, int L, std::uint64_t vertex_limit) {
  if (b < 1 || L < 0) throw UsageError("rooted_tree requires b >= 1, L >= 0");
  std::uint64_t n = 1, layer = 1;
  for (int d = 1; d <= L; ++d) {
    layer *= static_cast<std::uint64_t>(b);
    n += layer;
    check_limit(n, vertex_limit);
  }
  FiniteGraph g;
  g.family = GraphFamily::RootedTree;
  g.params = {b, L};
  g.vertex_count = static_cast<std::uint32_t>(n);
  g.adjacency.resize(n);
  g.is_boundary.assign(n, 0);
  g.origin = 0;
  // breadth-first ids: depth-d layer starts at (b^d - 1)/(b - 1)
  std::uint64_t layer_start = 0, layer_size = 1, next = 1;
  for (int d = 0; d < L; ++d) {
    for (std::uint64_t i = 0; i < layer_size; ++i) {
      Vertex parent = static_cast<Vertex>(layer_start + i);
      for (int c = 0; c < b; ++c) add_edge(g, parent, static_cast<Vertex>(next++));
    }
    layer_start += layer_size;
    layer_size *= static_cast<std::uint64_t>(b);
  }
  for (std::uint64_t v = layer_start; v < n; ++v) g.is_boundary[v] = 1;
  finalize(g);
  return g;
}

FiniteGraph build_regular_tree(int d, int L, std::uint64_t vertex_limit) {
  if (d < 3 || L < 0) throw UsageError("regular_tree requires d >= 3, L >= 0");
  std::uint64_t n = 1, layer = 1;
  for (int r = 1; r <= L; ++r) {
    layer = (r == 1) ? static_cast<std::uint64_t>(d) : layer * static_cast<std::uint64_t>(d - 1);
    n += layer;
    check_limit(n, vertex_limit);
  }
  FiniteGraph g;
  g.family = GraphFamily::RegularTree;
  g.params = {d, L};
  g.vertex_count = static_cast<std::uint32_t>(n);
  g.adjacency.resize(n);
  g.is_boundary.assign(n, 0);
  g.origin = 0;
  std::uint64_t layer_start = 0, layer_size = 1, next = 1;
  for (int r = 0; r < L; ++r) {
    int children = (r == 0) ? d : d - 1;
    for (std::uint64_t i = 0; i < layer_size; ++i) {
      Vertex parent = static_cast<Vertex>(layer_start + i);
      for (int c = 0; c < children; ++c) add_edge(g, parent, static_cast<Vertex>(next++));
    }
    layer_start += layer_size;
    layer_size = (r == 0) ? static_cast<std::uint64_t>(d) : layer_size * static_cast<std::uint64_t>(d - 1);
  }
  for (std::uint64_t v = layer_start; v < n; ++v) g.is_boundary[v] = 1;
  finalize(g);
  return g;
}

FiniteGraph build_torus(int d, int n, std::uint64_t vertex_limit) {
  if (d < 1 || n < 3) throw UsageError("torus requires d >= 1, n >= 3");
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    total *= static_cast<std::uint64_t>(n);
    check_limit(total, vertex_limit);
  }
  FiniteGraph g;
  g.family = GraphFamily::Torus;
  g.params = {d, n};
  g.vertex_count = static_cast<std::uint32_t>(total);
  g.adjacency.resize(total);
  g.is_boundary.assign(total, 0);
  g.origin = 0;
  // row-major: coordinate i has stride n^(d-1-i)
  std::vector<std::uint64_t> stride(d, 1);
  for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * static_cast<std::uint64_t>(n);
  std::vector<int> coord(d, 0);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint64_t rest = v;
    for (int i = 0; i < d; ++i) {
      coord[i] = static_cast<int>(rest / stride[i]);
      rest %= stride[i];
    }
    for (int i = 0; i < d; ++i) {
      int cp = (coord[i] + 1) % n;
      std::uint64_t u = v + stride[i] * static_cast<std::uint64_t>(cp - coord[i]);
      auto a = static_cast<Vertex>(std::min<std::uint64_t>(v, u));
      auto b = static_cast<Vertex>(std::max<std::uint64_t>(v, u));
      edges.insert({a, b});
    }
  }
  for (auto [a, b] : edges) add_edge(g, a, b);
  // translation generators, one per axis
  for (int i = 0; i < d; ++i) {
    std::vector<Vertex> perm(total);
    for (std::uint64_t v = 0; v < total; ++v) {
      std::uint64_t rest = v;
      for (int j = 0; j < d; ++j) {
        coord[j] = static_cast<int>(rest / stride[j]);
        rest %= stride[j];
      }
      coord[i] = (coord[i] + 1) % n;
      std::uint64_t img = 0;
      for (int j = 0; j < d; ++j) img += stride[j] * static_cast<std::uint64_t>(coord[j]);
      perm[v] = static_cast<Vertex>(img);
    }
    g.automorphisms.push_back(std::move(perm));
  }
  finalize(g);
  return g;
}

FiniteGraph build_tree_cycle(int b, int L, int k, std::uint64_t vertex_limit) {
  if (k < 3) throw UsageError("tree_cycle requires cycle length k >= 3");
  FiniteGraph tree = build_rooted_tree(b, L, vertex_limit);
  std::uint64_t total = static_cast<std::uint64_t>(tree.vertex_count) * static_cast<std::uint64_t>(k);
  check_limit(total, vertex_limit);
  FiniteGraph g;
  g.family = GraphFamily::TreeCycle;
  g.params = {b, L, k};
  g.vertex_count = static_cast<std::uint32_t>(total);
  g.adjacency.resize(total);
  g.is_boundary.assign(total, 0);
  g.origin = 0;  // (root, 0)
  auto vid = [k](Vertex t, int c) { return static_cast<Vertex>(static_cast<std::uint64_t>(t) * k + c); };
  for (Vertex t = 0; t < tree.vertex_count; ++t) {
    for (int c = 0; c < k; ++c) {
      // cycle edge at fixed tree vertex; each unordered pair added once
      int cn = (c + 1) % k;
      add_edge(g, vid(t, std::min(c, cn)), vid(t, std::max(c, cn)));
      // tree edges at fixed cycle position (from the smaller tree id)
      for (Vertex u : tree.adjacency[t])
        if (u > t) add_edge(g, vid(t, c), vid(u, c));
    }
    if (tree.is_boundary[t])
      for (int c = 0; c < k; ++c) g.is_boundary[vid(t, c)] = 1;
  }
  finalize(g);
  return g;
}

bool is_automorphism(const FiniteGraph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.vertex_count) return false;
  std::vector<std::uint8_t> seen(g.vertex_count, 0);
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (perm[v] >= g.vertex_count || seen[perm[v]]) return false;
    seen[perm[v]] = 1;
  }
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    std::vector<Vertex> image;
    image.reserve(g.adjacency[v].size());
    for (Vertex u : g.adjacency[v]) image.push_back(perm[u]);
    std::sort(image.begin(), image.end());
    if (image != g.adjacency[perm[v]]) return false;
  }
  return true;
}

std::vector<std::vector<Vertex>> automorphism_group(const FiniteGraph& g) {
  std::vector<Vertex> identity(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) identity[v] = v;
  std::set<std::vector<Vertex>> group{identity};
  std::queue<std::vector<Vertex>> todo;
  todo.push(identity);
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop();
    for (const auto& gen : g.automorphisms) {
      std::vector<Vertex> comp(g.vertex_count);
      for (Vertex v = 0; v < g.vertex_count; ++v) comp[v] = gen[cur[v]];
      if (group.insert(comp).second) todo.push(comp);
    }
  }
  return {group.begin(), group.end()};
}

bool group_is_transitive(const FiniteGraph& g) {
  if (g.vertex_count == 0) return false;
  auto group = automorphism_group(g);
  std::vector<std::uint8_t> orbit(g.vertex_count, 0);
  for (const auto& perm : group) orbit[perm[g.origin]] = 1;
  for (Vertex v = 0; v < g.vertex_count; ++v)
    if (!orbit[v]) return false;
  return true;
}

namespace {

IsoEntry entry_for(const FiniteGraph& g, const std::vector<std::uint8_t>& in_w,
                   std::uint64_t size, std::string descriptor) {
  std::uint64_t bsz = 0;
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (!in_w[v]) continue;
    for (Vertex u : g.adjacency[v]) {
      if (!in_w[u]) {
        ++bsz;
        break;
      }
    }
  }
  IsoEntry e;
  e.descriptor = std::move(descriptor);
  e.subset_size = size;
  e.boundary_size = bsz;
  e.ratio = static_cast<double>(bsz) / static_cast<double>(size);
  return e;
}

}  // namespace

IsoProfile isoperimetric_profile(const FiniteGraph& g, SubsetFamily family) {
  IsoProfile profile;
  switch (family) {
    case SubsetFamily::BallsAroundOrigin: {
      // breadth-first layers from the origin
      std::vector<int> dist(g.vertex_count, -1);
      std::queue<Vertex> q;
      dist[g.origin] = 0;
      q.push(g.origin);
      int maxd = 0;
      while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        maxd = std::max(maxd, dist[v]);
        for (Vertex u : g.adjacency[v])
          if (dist[u] < 0) {
            dist[u] = dist[v] + 1;
            q.push(u);
          }
      }
      std::vector<std::uint8_t> in_w(g.vertex_count, 0);
      std::uint64_t size = 0;
      for (int r = 0; r <= maxd; ++r) {
        for (Vertex v = 0; v < g.vertex_count; ++v)
          if (dist[v] == r) {
            in_w[v] = 1;
            ++size;
          }
        profile.entries.push_back(entry_for(g, in_w, size, "ball_r" + std::to_string(r)));
      }
      break;
    }
    case SubsetFamily::Subtrees: {
      if (g.family != GraphFamily::RootedTree)
        throw UsageError("subtree family requires a rooted tree");
      int L = g.params[1];
      std::vector<std::uint8_t> in_w(g.vertex_count, 0);
      // breadth-first ids make depth-t subtrees id-prefixes
      int b = g.params[0];
      std::uint64_t size = 0, layer = 1, next = 0;
      for (int t = 0; t <= L; ++t) {
        for (std::uint64_t i = 0; i < layer; ++i) in_w[next + i] = 1;
        size += layer;
        next += layer;
        layer *= static_cast<std::uint64_t>(b);
        profile.entries.push_back(entry_for(g, in_w, size, "subtree_d" + std::to_string(t)));
      }
      break;
    }
    case SubsetFamily::PathSegments: {
      if (g.family != GraphFamily::Torus || g.params[0] != 1)
        throw UsageError("path-segment family requires torus(1,n)");
      int n = g.params[1];
      std::vector<std::uint8_t> in_w(g.vertex_count, 0);
      for (int k = 1; k < n; ++k) {
        in_w[k - 1] = 1;
        profile.entries.push_back(
            entry_for(g, in_w, static_cast<std::uint64_t>(k), "segment_k" + std::to_string(k)));
      }
      break;
    }
  }
  return profile;
}

}  // namespace percolab
