#include "percolab/oracle.hpp"

#include <cmath>

#include "percolab/clusters.hpp"

namespace percolab {
namespace oracle {

TreeRecursion tree_recursion(int b, double p, int L) {
  if (b < 1 || p < 0.0 || p > 1.0 || L < 0) throw UsageError("tree_recursion: invalid parameters");
  TreeRecursion r;
  r.b = b;
  r.p = p;
  r.q_by_depth.reserve(L + 1);
  r.theta_by_depth.reserve(L + 1);
  double q = 1.0;
  for (int l = 0; l <= L; ++l) {
    if (l > 0) q = 1.0 - std::pow(1.0 - p * q, b);
    r.q_by_depth.push_back(q);
    r.theta_by_depth.push_back(p * q);
  }
  return r;
}

double tree_theta_depth(int b, double p, int L) {
  return tree_recursion(b, p, L).theta_by_depth.back();
}

double tree_theta_limit(int b, double p, double tol) {
  if (tol <= 0.0) throw UsageError("tree_theta_limit: tol must be positive");
  if (p * b <= 1.0) return 0.0;  // subcritical/critical branching dies out
  double q = 1.0;
  for (int l = 0; l < 1000000; ++l) {
    double next = 1.0 - std::pow(1.0 - p * q, b);
    if (std::abs(next - q) < tol * 0.5) return p * next;
    q = next;
  }
  return p * q;
}

double tree_pc(int b) {
  if (b < 2) throw UsageError("tree_pc: no phase transition for b < 2");
  return 1.0 / static_cast<double>(b);
}

namespace {

// Boundary-touching vertex set of the pattern given by `open`, via multi-source
// search from open boundary vertices.
void boundary_touching(const FiniteGraph& g, const std::vector<std::uint8_t>& open,
                       std::vector<std::uint8_t>& out, std::vector<Vertex>& stack) {
  std::fill(out.begin(), out.end(), 0);
  stack.clear();
  for (Vertex v : g.boundary)
    if (open[v] && !out[v]) {
      out[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.adjacency[v])
      if (open[u] && !out[u]) {
        out[u] = 1;
        stack.push_back(u);
      }
  }
}

// Components/statistics of an explicit open pattern, small-graph scale.
struct PatternStats {
  std::uint32_t n_boundary_touching = 0;
  bool origin_in_proxy = false;
};

PatternStats pattern_stats(const FiniteGraph& g, const std::vector<std::uint8_t>& open) {
  PatternStats s;
  std::vector<std::uint8_t> seen(g.vertex_count, 0);
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < g.vertex_count; ++start) {
    if (!open[start] || seen[start]) continue;
    bool touches = false, has_origin = false;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      if (g.is_boundary[v]) touches = true;
      if (v == g.origin) has_origin = true;
      for (Vertex u : g.adjacency[v])
        if (open[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    if (touches) {
      ++s.n_boundary_touching;
      if (has_origin) s.origin_in_proxy = true;
    }
  }
  return s;
}

}  // namespace

PhiExact enumerate_phi_exact(const FiniteGraph& g, double p, double delta, PhiQuery query,
                             std::uint32_t vertex_limit) {
  if (p < 0.0 || p > 1.0 || delta < 0.0 || delta > 1.0)
    throw UsageError("enumerate_phi_exact: probabilities must lie in [0,1]");
  const std::uint32_t n = g.vertex_count;
  if (n > vertex_limit)
    throw ResourceError("enumerate_phi_exact: " + std::to_string(n) +
                        " vertices exceeds enumeration limit " + std::to_string(vertex_limit));

  PhiExact result;
  if (query == PhiQuery::FullDistributionOfN) result.distribution.assign(n + 1, 0.0);

  std::vector<std::uint8_t> omega(n), destroyed(n), survivors(n), phi(n);
  std::vector<Vertex> stack;
  std::vector<Vertex> free_sites;  // vertices not in the surviving set

  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double w = 1.0;
    std::uint32_t popcount = 0;
    for (Vertex v = 0; v < n; ++v) {
      omega[v] = static_cast<std::uint8_t>((mask >> v) & 1u);
      popcount += omega[v];
    }
    w = std::pow(p, popcount) * std::pow(1.0 - p, n - popcount);
    if (w == 0.0) continue;

    boundary_touching(g, omega, destroyed, stack);
    free_sites.clear();
    for (Vertex v = 0; v < n; ++v) {
      survivors[v] = static_cast<std::uint8_t>(omega[v] && !destroyed[v]);
      if (!survivors[v]) free_sites.push_back(v);
    }

    // inner sum: reinforcement choices on the free sites only
    const std::uint32_t m = static_cast<std::uint32_t>(free_sites.size());
    for (std::uint64_t rmask = 0; rmask < (1ULL << m); ++rmask) {
      std::uint32_t rpop = 0;
      for (std::uint32_t i = 0; i < m; ++i) {
        std::uint8_t bit = static_cast<std::uint8_t>((rmask >> i) & 1u);
        phi[free_sites[i]] = bit;
        rpop += bit;
      }
      double rw = std::pow(delta, rpop) * std::pow(1.0 - delta, m - rpop);
      if (rw == 0.0) continue;
      for (Vertex v = 0; v < n; ++v)
        if (survivors[v]) phi[v] = 1;

      PatternStats s = pattern_stats(g, phi);
      double weight = w * rw;
      switch (query) {
        case PhiQuery::OriginInInfiniteProxy:
          if (s.origin_in_proxy) result.value += weight;
          break;
        case PhiQuery::NAtLeastOne:
          if (s.n_boundary_touching >= 1) result.value += weight;
          break;
        case PhiQuery::FullDistributionOfN:
          result.distribution[s.n_boundary_touching] += weight;
          break;
      }
    }
  }
  return result;
}

double enumerate_theta_exact(const FiniteGraph& g, double p, std::uint32_t vertex_limit) {
  if (p < 0.0 || p > 1.0) throw UsageError("enumerate_theta_exact: p must lie in [0,1]");
  const std::uint32_t n = g.vertex_count;
  if (n > vertex_limit)
    throw ResourceError("enumerate_theta_exact: graph exceeds enumeration limit");
  std::vector<std::uint8_t> omega(n);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::uint32_t popcount = 0;
    for (Vertex v = 0; v < n; ++v) {
      omega[v] = static_cast<std::uint8_t>((mask >> v) & 1u);
      popcount += omega[v];
    }
    double w = std::pow(p, popcount) * std::pow(1.0 - p, n - popcount);
    if (w == 0.0) continue;
    if (pattern_stats(g, omega).origin_in_proxy) total += w;
  }
  return total;
}

}  // namespace oracle
}  // namespace percolab
