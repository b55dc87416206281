#include "percolab/mtp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace percolab {

namespace {

// stamped visit buffers so per-vertex scans need no O(n) reset
struct StampField {
  std::vector<std::uint32_t> stamp;
  std::uint32_t current = 0;

  void resize(std::size_t n) {
    if (stamp.size() != n) {
      stamp.assign(n, 0);
      current = 0;
    }
  }
  void next() {
    if (++current == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      current = 1;
    }
  }
  bool seen(Vertex v) const { return stamp[v] == current; }
  void mark(Vertex v) { stamp[v] = current; }
};

// Counts boundary-touching components of omega \ {v} adjacent to v, stopping
// at `cap`. `visited` must be freshly stamped by the caller.
int adjacent_boundary_components(const FiniteGraph& g, const std::vector<std::uint8_t>& open,
                                 Vertex v, StampField& visited, std::vector<Vertex>& stack,
                                 int cap) {
  int found = 0;
  for (Vertex nb : g.adjacency[v]) {
    if (!open[nb] || visited.seen(nb)) continue;
    bool touches = false;
    stack.assign(1, nb);
    visited.mark(nb);
    while (!stack.empty()) {
      Vertex w = stack.back();
      stack.pop_back();
      if (g.is_boundary[w]) touches = true;
      for (Vertex u : g.adjacency[w]) {
        if (u == v || !open[u] || visited.seen(u)) continue;
        visited.mark(u);
        stack.push_back(u);
      }
    }
    if (touches && ++found >= cap) return found;
  }
  return found;
}

bool is_encounter(const FiniteGraph& g, const std::vector<std::uint8_t>& open, Vertex v,
                  StampField& visited, std::vector<Vertex>& stack) {
  if (!open[v]) return false;
  if (g.adjacency[v].size() < 3) return false;
  visited.next();
  return adjacent_boundary_components(g, open, v, visited, stack, 3) >= 3;
}

}  // namespace

TransportFunction displacement_invariant_transport(const FiniteGraph& torus, const Seed& seed) {
  if (torus.family != GraphFamily::Torus)
    throw UsageError("displacement_invariant_transport: torus required");
  const int d = torus.params[0];
  const int n = torus.params[1];
  std::vector<std::uint64_t> stride(d, 1);
  for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * static_cast<std::uint64_t>(n);
  const std::uint64_t classes = torus.vertex_count;  // one class per displacement vector
  std::vector<double> weight(classes);
  for (std::uint64_t c = 0; c < classes; ++c) weight[c] = uniform01(seed, c);
  TransportFunction f;
  f.evaluator = [d, n, stride, weight](Vertex u, Vertex v) {
    std::uint64_t ru = u, rv = v, cls = 0;
    for (int i = 0; i < d; ++i) {
      const int cu = static_cast<int>(ru / stride[i]);
      const int cv = static_cast<int>(rv / stride[i]);
      ru %= stride[i];
      rv %= stride[i];
      cls += stride[i] * static_cast<std::uint64_t>(((cv - cu) % n + n) % n);
    }
    return weight[cls];
  };
  return f;
}

std::pair<double, double> mtp_check(const FiniteGraph& g, const TransportFunction& f) {
  if (g.automorphisms.empty())
    throw UsageError("mtp_check: graph carries no automorphism generators");
  auto group = automorphism_group(g);
  {
    std::vector<std::uint8_t> orbit(g.vertex_count, 0);
    for (const auto& perm : group) orbit[perm[g.origin]] = 1;
    for (Vertex v = 0; v < g.vertex_count; ++v)
      if (!orbit[v]) throw UsageError("mtp_check: listed group does not act transitively");
  }
  for (std::size_t gi = 0; gi < group.size(); ++gi) {
    const auto& perm = group[gi];
    for (Vertex u = 0; u < g.vertex_count; ++u)
      for (Vertex v = 0; v < g.vertex_count; ++v)
        if (std::abs(f.evaluator(perm[u], perm[v]) - f.evaluator(u, v)) > 1e-12) {
          std::ostringstream os;
          os << "mtp_check: transport not invariant under group element " << gi << " at (u,v)=("
             << u << "," << v << ")";
          throw UsageError(os.str());
        }
  }
  double out = 0.0, in = 0.0;
  for (Vertex x = 0; x < g.vertex_count; ++x) {
    out += f.evaluator(g.origin, x);
    in += f.evaluator(x, g.origin);
  }
  return {out, in};
}

GammaSequence make_gamma_sequence(const FiniteGraph& g, const LabelField& field,
                                  const std::vector<double>& p_values) {
  for (std::size_t i = 1; i < p_values.size(); ++i)
    if (p_values[i] > p_values[i - 1])
      throw UsageError("make_gamma_sequence: p values must be non-increasing");
  GammaSequence seq;
  seq.p_values = p_values;
  for (double p : p_values) {
    Configuration omega = level_set(g, field, p);
    ClusterLabeling l = label_clusters(g, omega);
    seq.configs.push_back(infinite_proxy(g, l, omega));
  }
  return seq;
}

std::vector<EstimateCI> estimate_origin_in_gamma(const FiniteGraph& g,
                                                 const std::vector<double>& p_values,
                                                 std::uint64_t n_samples, const Seed& seed) {
  std::vector<std::uint64_t> counts(p_values.size(), 0);
  std::vector<std::uint8_t> seen(g.vertex_count);
  std::vector<Vertex> stack;
  for (std::uint64_t r = 0; r < n_samples; ++r) {
    const Seed sp = Seed{seed.master, Stream::PrimaryField, seed.replica + r};
    for (std::size_t k = 0; k < p_values.size(); ++k) {
      const double p = p_values[k];
      if (uniform01(sp, g.origin) > p) continue;
      // origin in Gamma(p) iff its p-open cluster reaches the boundary
      std::fill(seen.begin(), seen.end(), 0);
      stack.assign(1, g.origin);
      seen[g.origin] = 1;
      bool reached = g.is_boundary[g.origin];
      while (!stack.empty() && !reached) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : g.adjacency[v]) {
          if (seen[u] || uniform01(sp, u) > p) continue;
          if (g.is_boundary[u]) {
            reached = true;
            break;
          }
          seen[u] = 1;
          stack.push_back(u);
        }
      }
      if (reached) ++counts[k];
    }
  }
  std::vector<EstimateCI> out;
  for (std::uint64_t c : counts) out.push_back(wilson_estimate(c, n_samples));
  return out;
}

std::vector<Vertex> find_encounter_points(const FiniteGraph& g, const Configuration& omega) {
  if (omega.graph_id != g.id)
    throw UsageError("find_encounter_points: configuration on different graph");
  std::vector<Vertex> y;
  StampField visited;
  visited.resize(g.vertex_count);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < g.vertex_count; ++v)
    if (is_encounter(g, omega.members, v, visited, stack)) y.push_back(v);
  return y;
}

Forest build_forest(const FiniteGraph& g, const Configuration& omega,
                    const std::vector<double>& x_labels) {
  if (omega.graph_id != g.id) throw UsageError("build_forest: configuration on different graph");
  if (x_labels.size() != g.vertex_count)
    throw UsageError("build_forest: x_labels size mismatch");

  Forest f;
  f.vertices = find_encounter_points(g, omega);
  std::vector<std::uint8_t> is_enc(g.vertex_count, 0);
  for (Vertex v : f.vertices) is_enc[v] = 1;

  std::set<std::pair<Vertex, Vertex>> edges;
  StampField visited;
  visited.resize(g.vertex_count);
  std::vector<Vertex> stack;
  std::vector<std::uint32_t> dist(g.vertex_count, 0);
  std::vector<Vertex> comp_members;
  StampField comp_stamp;
  comp_stamp.resize(g.vertex_count);

  for (Vertex v : f.vertices) {
    // distances from v inside the open subgraph
    visited.next();
    std::queue<Vertex> bfs;
    bfs.push(v);
    visited.mark(v);
    dist[v] = 0;
    while (!bfs.empty()) {
      Vertex w = bfs.front();
      bfs.pop();
      for (Vertex u : g.adjacency[w]) {
        if (!omega.members[u] || visited.seen(u)) continue;
        visited.mark(u);
        dist[u] = dist[w] + 1;
        bfs.push(u);
      }
    }
    // boundary-touching components of omega \ {v} adjacent to v
    comp_stamp.next();
    for (Vertex nb : g.adjacency[v]) {
      if (!omega.members[nb] || comp_stamp.seen(nb)) continue;
      comp_members.clear();
      bool touches = false;
      stack.assign(1, nb);
      comp_stamp.mark(nb);
      while (!stack.empty()) {
        Vertex w = stack.back();
        stack.pop_back();
        comp_members.push_back(w);
        if (g.is_boundary[w]) touches = true;
        for (Vertex u : g.adjacency[w]) {
          if (u == v || !omega.members[u] || comp_stamp.seen(u)) continue;
          comp_stamp.mark(u);
          stack.push_back(u);
        }
      }
      if (!touches) continue;
      // Q(Z,v): encounter points of Z at minimal open-subgraph distance to v
      std::uint32_t best_dist = UINT32_MAX;
      Vertex chosen = 0;
      bool have = false;
      for (Vertex w : comp_members) {
        if (!is_enc[w]) continue;
        if (dist[w] < best_dist) {
          best_dist = dist[w];
          chosen = w;
          have = true;
        } else if (dist[w] == best_dist && have) {
          // x-minimal member, vertex id as deterministic tiebreak
          if (x_labels[w] < x_labels[chosen] ||
              (x_labels[w] == x_labels[chosen] && w < chosen))
            chosen = w;
        }
      }
      if (have) edges.insert({std::min(v, chosen), std::max(v, chosen)});
    }
  }

  f.edges.assign(edges.begin(), edges.end());

  // degree distribution and acyclicity (both reported, not asserted)
  std::vector<std::int32_t> index_of(g.vertex_count, -1);
  for (std::size_t i = 0; i < f.vertices.size(); ++i)
    index_of[f.vertices[i]] = static_cast<std::int32_t>(i);
  f.degree.assign(f.vertices.size(), 0);
  std::vector<std::int32_t> parent(f.vertices.size(), -1);
  std::function<std::int32_t(std::int32_t)> find = [&](std::int32_t x) {
    while (parent[x] >= 0) x = parent[x];
    return x;
  };
  f.acyclic = true;
  for (auto [a, b] : f.edges) {
    ++f.degree[index_of[a]];
    ++f.degree[index_of[b]];
    std::int32_t ra = find(index_of[a]), rb = find(index_of[b]);
    if (ra == rb) f.acyclic = false;
    else parent[ra] = rb;
  }
  return f;
}

Forest restrict_forest(const Forest& f, const FiniteGraph& g, const Configuration& omega,
                       const Configuration& gamma) {
  Configuration diff = config_ops(omega, gamma, SetOp::Difference);
  ClusterLabeling l = label_clusters(g, diff);
  Forest out;
  out.vertices = f.vertices;
  for (auto [a, b] : f.edges) {
    if (l.component_id[a] >= 0 && l.component_id[a] == l.component_id[b]) out.edges.push_back({a, b});
  }
  std::vector<std::int32_t> index_of(g.vertex_count, -1);
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    index_of[out.vertices[i]] = static_cast<std::int32_t>(i);
  out.degree.assign(out.vertices.size(), 0);
  std::vector<std::int32_t> parent(out.vertices.size(), -1);
  std::function<std::int32_t(std::int32_t)> find = [&](std::int32_t x) {
    while (parent[x] >= 0) x = parent[x];
    return x;
  };
  out.acyclic = true;
  for (auto [a, b] : out.edges) {
    ++out.degree[index_of[a]];
    ++out.degree[index_of[b]];
    std::int32_t ra = find(index_of[a]), rb = find(index_of[b]);
    if (ra == rb) out.acyclic = false;
    else parent[ra] = rb;
  }
  return out;
}

std::vector<BoundaryIneqRow> boundary_inequality_stats(const FiniteGraph& g, double p,
                                                       const std::vector<double>& gamma_p,
                                                       const BoundaryIneqOptions& opt) {
  if (p < 0.0 || p > 1.0) throw UsageError("boundary_inequality_stats: p must lie in [0,1]");
  const std::size_t m = gamma_p.size();
  std::uint64_t lhs_count = 0;
  std::vector<std::uint64_t> rhs_count(m, 0), gamma_count(m, 0);

  StampField visited;
  visited.resize(g.vertex_count);
  std::vector<Vertex> stack;
  std::vector<std::uint8_t> gamma_mask(g.vertex_count), seen(g.vertex_count);

  for (std::uint64_t r = 0; r < opt.n_samples; ++r) {
    const Seed sp = Seed{opt.seed.master, Stream::PrimaryField, opt.seed.replica + r};
    LabelField field;
    field.seed = sp;
    field.labels.resize(g.vertex_count);
    for (Vertex v = 0; v < g.vertex_count; ++v) field.labels[v] = uniform01(sp, v);
    Configuration omega = level_set(g, field, p);

    const bool o_enc = is_encounter(g, omega.members, g.origin, visited, stack);
    if (o_enc) ++lhs_count;

    std::vector<Vertex> f_neighbors;
    if (o_enc) {
      const Seed sx = Seed{opt.seed.master, Stream::ForestLabels, opt.seed.replica + r};
      std::vector<double> x_labels(g.vertex_count);
      for (Vertex v = 0; v < g.vertex_count; ++v) x_labels[v] = uniform01(sx, v);
      Forest forest = build_forest(g, omega, x_labels);
      for (auto [a, b] : forest.edges) {
        if (a == g.origin) f_neighbors.push_back(b);
        if (b == g.origin) f_neighbors.push_back(a);
      }
    }

    for (std::size_t k = 0; k < m; ++k) {
      // Gamma = boundary-touching part of the p_k level set of the same field
      std::fill(gamma_mask.begin(), gamma_mask.end(), 0);
      stack.clear();
      for (Vertex v : g.boundary)
        if (field.labels[v] <= gamma_p[k]) {
          gamma_mask[v] = 1;
          stack.push_back(v);
        }
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : g.adjacency[v])
          if (field.labels[u] <= gamma_p[k] && !gamma_mask[u]) {
            gamma_mask[u] = 1;
            stack.push_back(u);
          }
      }
      if (gamma_mask[g.origin]) ++gamma_count[k];
      if (!o_enc) continue;

      bool in_boundary_of_k;
      if (gamma_mask[g.origin]) {
        // K_n(o) is empty; under the wider reading any F-neighbour lies
        // outside it, under the member reading o is not in the boundary.
        in_boundary_of_k =
            (opt.reading == BoundaryReading::AllForestVertices) && !f_neighbors.empty();
      } else {
        // o's component of omega \ Gamma; an F-neighbour outside it puts o on
        // the boundary of K_n(o)
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(1, g.origin);
        seen[g.origin] = 1;
        while (!stack.empty()) {
          Vertex v = stack.back();
          stack.pop_back();
          for (Vertex u : g.adjacency[v])
            if (omega.members[u] && !gamma_mask[u] && !seen[u]) {
              seen[u] = 1;
              stack.push_back(u);
            }
        }
        in_boundary_of_k = false;
        for (Vertex u : f_neighbors)
          if (!seen[u]) {
            in_boundary_of_k = true;
            break;
          }
      }
      if (in_boundary_of_k) ++rhs_count[k];
    }
  }

  std::vector<BoundaryIneqRow> rows;
  for (std::size_t k = 0; k < m; ++k) {
    BoundaryIneqRow row;
    row.p_gamma = gamma_p[k];
    row.lhs = wilson_estimate(lhs_count, opt.n_samples);
    row.rhs = wilson_estimate(rhs_count[k], opt.n_samples);
    row.origin_in_gamma = wilson_estimate(gamma_count[k], opt.n_samples);
    const double sigma = std::sqrt(row.lhs.stderr_value * row.lhs.stderr_value +
                                   4.0 * row.rhs.stderr_value * row.rhs.stderr_value);
    row.holds_within_3sigma = row.lhs.value <= 2.0 * row.rhs.value + 3.0 * sigma;
    rows.push_back(row);
  }
  return rows;
}

Configuration build_xi(const FiniteGraph& g, const Configuration& omega,
                       const Configuration& gamma, int radius) {
  if (omega.graph_id != g.id || gamma.graph_id != g.id)
    throw UsageError("build_xi: configuration on different graph");
  if (radius < 0) throw UsageError("build_xi: radius must be nonnegative");
  ClusterLabeling l = label_clusters(g, omega);
  if (l.n_infinite != 1)
    throw UsageError("build_xi: requires exactly one boundary-touching cluster, found " +
                     std::to_string(l.n_infinite));

  // the unique boundary-touching cluster U and graph distances to it
  std::int32_t u_comp = -1;
  for (std::size_t c = 0; c < l.touches_boundary.size(); ++c)
    if (l.touches_boundary[c]) u_comp = static_cast<std::int32_t>(c);
  std::vector<std::uint8_t> in_u(g.vertex_count, 0);
  std::vector<std::int32_t> dist(g.vertex_count, -1);
  std::queue<Vertex> bfs;
  for (Vertex v = 0; v < g.vertex_count; ++v)
    if (omega.members[v] && l.component_id[v] == u_comp) {
      in_u[v] = 1;
      dist[v] = 0;
      bfs.push(v);
    }
  while (!bfs.empty()) {
    Vertex v = bfs.front();
    bfs.pop();
    for (Vertex u : g.adjacency[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        bfs.push(u);
      }
  }

  Configuration diff = config_ops(omega, gamma, SetOp::Difference);
  ClusterLabeling ld = label_clusters(g, diff);

  // U(w): members of U at graph distance exactly dist[w] from w
  auto nearest_set = [&](Vertex w, std::vector<Vertex>& out) {
    out.clear();
    if (dist[w] < 0) return;
    if (in_u[w]) {
      out.push_back(w);
      return;
    }
    std::vector<std::int32_t> dd(g.vertex_count, -1);
    std::queue<Vertex> q;
    dd[w] = 0;
    q.push(w);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      if (dd[v] == dist[w]) {
        if (in_u[v]) out.push_back(v);
        continue;
      }
      for (Vertex u : g.adjacency[v])
        if (dd[u] < 0) {
          dd[u] = dd[v] + 1;
          q.push(u);
        }
    }
  };

  Configuration xi = empty_config(g);
  std::vector<Vertex> pool, tmp;
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (dist[v] < 0 || dist[v] > radius) continue;
    pool.clear();
    nearest_set(v, tmp);
    pool.insert(pool.end(), tmp.begin(), tmp.end());
    for (Vertex nb : g.adjacency[v]) {
      nearest_set(nb, tmp);
      pool.insert(pool.end(), tmp.begin(), tmp.end());
    }
    bool ok = !pool.empty();
    std::int32_t comp = ok ? ld.component_id[pool.front()] : -1;
    for (Vertex u : pool)
      if (ld.component_id[u] < 0 || ld.component_id[u] != comp) {
        ok = false;
        break;
      }
    if (ok && comp >= 0) {
      xi.members[v] = 1;
      ++xi.count;
    }
  }
  return xi;
}

}  // namespace percolab
