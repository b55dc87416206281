#include "percolab/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "percolab/parallel.hpp"

namespace percolab {

namespace {

struct Scratch {
  std::vector<std::uint8_t> omega, destroyed, seen;
  std::vector<Vertex> stack;

  void resize(std::size_t n) {
    if (omega.size() != n) {
      omega.resize(n);
      destroyed.resize(n);
      seen.resize(n);
    }
  }
};

Scratch& scratch_for(std::size_t n) {
  thread_local Scratch s;
  s.resize(n);
  return s;
}

// destroyed = boundary-touching part of `open`, multi-source search from the
// open boundary vertices.
void mark_destroyed(const FiniteGraph& g, const std::vector<std::uint8_t>& open, Scratch& s) {
  std::fill(s.destroyed.begin(), s.destroyed.end(), 0);
  s.stack.clear();
  for (Vertex v : g.boundary)
    if (open[v]) {
      s.destroyed[v] = 1;
      s.stack.push_back(v);
    }
  while (!s.stack.empty()) {
    Vertex v = s.stack.back();
    s.stack.pop_back();
    for (Vertex u : g.adjacency[v])
      if (open[u] && !s.destroyed[u]) {
        s.destroyed[u] = 1;
        s.stack.push_back(u);
      }
  }
}

// Event indicator for one phi replica, without materializing configurations.
bool phi_event_indicator(const FiniteGraph& g, const Seed& base, std::uint64_t replica, double p,
                         double delta, ThetaEvent event) {
  Scratch& s = scratch_for(g.vertex_count);
  const Seed sp = Seed{base.master, Stream::PrimaryField, base.replica + replica};
  const Seed sr = Seed{base.master, Stream::ReinforcementField, base.replica + replica};
  for (Vertex v = 0; v < g.vertex_count; ++v)
    s.omega[v] = static_cast<std::uint8_t>(uniform01(sp, v) <= p);
  mark_destroyed(g, s.omega, s);

  auto phi_open = [&](Vertex v) {
    if (s.omega[v] && !s.destroyed[v]) return true;
    return uniform01(sr, v) <= delta;
  };

  if (event == ThetaEvent::NAtLeastOne) {
    // a boundary-touching component of phi must contain an open boundary vertex
    for (Vertex v : g.boundary)
      if (phi_open(v)) return true;
    return false;
  }

  // origin event: search phi from the origin, stop on reaching the boundary
  if (!phi_open(g.origin)) return false;
  if (g.is_boundary[g.origin]) return true;
  std::fill(s.seen.begin(), s.seen.end(), 0);
  s.stack.assign(1, g.origin);
  s.seen[g.origin] = 1;
  while (!s.stack.empty()) {
    Vertex v = s.stack.back();
    s.stack.pop_back();
    for (Vertex u : g.adjacency[v]) {
      if (s.seen[u] || !phi_open(u)) continue;
      if (g.is_boundary[u]) return true;
      s.seen[u] = 1;
      s.stack.push_back(u);
    }
  }
  return false;
}

void require_probability(double x, const char* what) {
  if (x < 0.0 || x > 1.0) throw UsageError(std::string(what) + " must lie in [0,1]");
}

}  // namespace

SdpSample make_sdp_sample(const FiniteGraph& g, const Seed& seed, double p, double delta) {
  require_probability(p, "p");
  require_probability(delta, "delta");
  if (g.boundary.empty())
    throw UsageError("make_sdp_sample: graph has empty boundary (no infinity proxy)");
  SdpSample out;
  out.p = p;
  out.delta = delta;
  LabelField primary = sample_field(g, Seed{seed.master, Stream::PrimaryField, seed.replica});
  LabelField reinf = sample_field(g, Seed{seed.master, Stream::ReinforcementField, seed.replica});
  out.omega_p = level_set(g, primary, p);
  ClusterLabeling l = label_clusters(g, out.omega_p);
  out.destroyed = infinite_proxy(g, l, out.omega_p);
  out.reinforcement = level_set(g, reinf, delta);
  Configuration survivors = config_ops(out.omega_p, out.destroyed, SetOp::Difference);
  out.phi = config_ops(survivors, out.reinforcement, SetOp::Union);
  return out;
}

EstimateCI estimate_theta(const FiniteGraph& g, double p, double delta, const ThetaOptions& opt) {
  require_probability(p, "p");
  require_probability(delta, "delta");
  if (opt.n_samples < 1) throw UsageError("estimate_theta: n_samples must be >= 1");
  if (g.boundary.empty())
    throw UsageError("estimate_theta: graph has empty boundary (no infinity proxy)");
  std::uint64_t successes = count_successes(opt.n_samples, opt.threads, [&](std::uint64_t r) {
    return phi_event_indicator(g, opt.seed, r, p, delta, opt.event);
  });
  return wilson_estimate(successes, opt.n_samples);
}

EstimateCI estimate_delta_c(const FiniteGraph& g, double p, const DeltaCOptions& opt) {
  require_probability(p, "p");
  if (opt.eps <= 0.0 || opt.eps >= 1.0) throw UsageError("estimate_delta_c: eps must lie in (0,1)");
  if (opt.tol <= 0.0) throw UsageError("estimate_delta_c: tol must be positive");

  std::uint64_t probe_index = 0;
  auto theta_at = [&](double delta) {
    ThetaOptions topt;
    topt.event = opt.event;
    topt.n_samples = opt.n_samples;
    topt.threads = opt.threads;
    topt.seed = opt.seed;
    topt.seed.replica = opt.seed.replica + probe_index * opt.n_samples;  // fresh replicas per probe
    ++probe_index;
    return estimate_theta(g, p, delta, topt).value;
  };

  const double theta_lo = theta_at(0.0);
  const double theta_hi = theta_at(1.0);
  if (!(theta_lo < opt.eps && opt.eps < theta_hi)) {
    throw BracketError("estimate_delta_c: no bracket, theta(0)=" + std::to_string(theta_lo) +
                       " theta(1)=" + std::to_string(theta_hi) + " eps=" + std::to_string(opt.eps));
  }
  double lo = 0.0, hi = 1.0;
  std::uint64_t used = 2 * opt.n_samples;
  while (hi - lo >= opt.tol) {
    const double mid = 0.5 * (lo + hi);
    if (theta_at(mid) >= opt.eps) hi = mid;
    else lo = mid;
    used += opt.n_samples;
  }
  EstimateCI e;
  e.value = 0.5 * (lo + hi);
  e.ci_low = lo;
  e.ci_high = hi;
  e.stderr_value = 0.25 * (hi - lo);
  e.n_samples = used;
  return e;
}

EstimateCI removed_graph_threshold(const FiniteGraph& g, double p, const RemovedPcOptions& opt) {
  require_probability(p, "p");
  if (opt.eps <= 0.0 || opt.eps >= 1.0)
    throw UsageError("removed_graph_threshold: eps must lie in (0,1)");
  if (g.boundary.empty())
    throw UsageError("removed_graph_threshold: graph has empty boundary (no infinity proxy)");

  std::vector<double> q_hats;
  std::uint64_t origin_present = 0;
  Scratch& s = scratch_for(g.vertex_count);
  std::vector<std::uint8_t> removed(g.vertex_count);

  for (std::uint64_t r = 0; r < opt.n_replicas; ++r) {
    const Seed sp = Seed{opt.seed.master, Stream::PrimaryField, opt.seed.replica + r};
    for (Vertex v = 0; v < g.vertex_count; ++v)
      s.omega[v] = static_cast<std::uint8_t>(uniform01(sp, v) <= p);
    mark_destroyed(g, s.omega, s);
    for (Vertex v = 0; v < g.vertex_count; ++v)
      removed[v] = static_cast<std::uint8_t>(!s.destroyed[v]);
    if (!removed[g.origin]) {
      // origin itself removed: the replica's threshold is right-censored at 1
      q_hats.push_back(1.0);
      continue;
    }
    ++origin_present;

    // origin-to-boundary search over {v : removed[v], label(v) <= q}
    std::uint64_t probe = 0;
    auto inner_theta = [&](double q) {
      auto indicator = [&](std::uint64_t j) {
        const Seed si = Seed{opt.seed.master, Stream::ReinforcementField,
                             detail::mix64(opt.seed.replica + r) ^ detail::mix64(probe * 0x10001ULL + j)};
        Scratch& sc = scratch_for(g.vertex_count);
        auto open = [&](Vertex v) { return removed[v] && uniform01(si, v) <= q; };
        if (!open(g.origin)) return false;
        if (g.is_boundary[g.origin]) return true;
        std::fill(sc.seen.begin(), sc.seen.end(), 0);
        sc.stack.assign(1, g.origin);
        sc.seen[g.origin] = 1;
        while (!sc.stack.empty()) {
          Vertex v = sc.stack.back();
          sc.stack.pop_back();
          for (Vertex u : g.adjacency[v]) {
            if (sc.seen[u] || !open(u)) continue;
            if (g.is_boundary[u]) return true;
            sc.seen[u] = 1;
            sc.stack.push_back(u);
          }
        }
        return false;
      };
      std::uint64_t c = count_successes(opt.n_inner, opt.threads, indicator);
      ++probe;
      return static_cast<double>(c) / static_cast<double>(opt.n_inner);
    };

    if (inner_theta(1.0) <= opt.eps) {
      // boundary unreachable even fully open: censored at 1 as well
      q_hats.push_back(1.0);
      continue;
    }
    double lo = 0.0, hi = 1.0;
    while (hi - lo >= opt.tol) {
      const double mid = 0.5 * (lo + hi);
      if (inner_theta(mid) >= opt.eps) hi = mid;
      else lo = mid;
    }
    q_hats.push_back(0.5 * (lo + hi));
  }

  if (origin_present == 0)
    throw BracketError("removed_graph_threshold: destroyed set contained the origin in every replica");
  return mean_estimate(q_hats.data(), q_hats.size());
}

EstimateCI fresh_birth_probe(const FiniteGraph& g, double p, double delta,
                             const FreshBirthOptions& opt) {
  require_probability(p, "p");
  require_probability(delta, "delta");
  const double q = opt.p_c_ref + delta;
  if (p > q) throw UsageError("fresh_birth_probe: requires p <= p_c_ref + delta");
  if (g.boundary.empty())
    throw UsageError("fresh_birth_probe: graph has empty boundary (no infinity proxy)");
  // A boundary-touching component of omega_q \ infinite_proxy(omega_p) must
  // contain a boundary vertex of the difference, and a boundary vertex lies in
  // the difference iff its label is in (p, q]: open boundary vertices of
  // omega_p always belong to the proxy.
  std::uint64_t successes = count_successes(opt.n_samples, opt.threads, [&](std::uint64_t r) {
    const Seed sp = Seed{opt.seed.master, Stream::PrimaryField, opt.seed.replica + r};
    for (Vertex v : g.boundary) {
      const double x = uniform01(sp, v);
      if (x > p && x <= q) return true;
    }
    return false;
  });
  return wilson_estimate(successes, opt.n_samples);
}

namespace {

// heap-style ids matching build_rooted_tree's breadth-first order
struct TreeLayout {
  int b = 2;
  int max_depth = 0;
  std::vector<std::uint64_t> layer_start;

  TreeLayout(int b_, int L) : b(b_), max_depth(L) {
    layer_start.resize(L + 2);
    layer_start[0] = 0;
    std::uint64_t layer = 1;
    for (int d = 0; d <= L; ++d) {
      layer_start[d + 1] = layer_start[d] + layer;
      layer *= static_cast<std::uint64_t>(b);
    }
  }
  std::uint64_t id(int depth, std::uint64_t index) const { return layer_start[depth] + index; }
};

}  // namespace

std::vector<EstimateCI> plain_tree_theta_depths(int b, const std::vector<int>& depths, double p,
                                                std::uint64_t n_samples, const Seed& seed,
                                                int threads) {
  if (b < 1 || depths.empty()) throw UsageError("plain_tree_theta_depths: invalid parameters");
  require_probability(p, "p");
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1]) throw UsageError("plain_tree_theta_depths: depths must ascend");
  const int L = depths.back();
  const TreeLayout layout(b, L);

  // per-replica max reached depth of the origin's open cluster
  auto max_reach = [&](std::uint64_t r) -> int {
    const Seed sp = Seed{seed.master, Stream::PrimaryField, seed.replica + r};
    if (uniform01(sp, 0) > p) return -1;
    thread_local std::vector<std::pair<int, std::uint64_t>> stack;  // (depth, index)
    stack.clear();
    stack.push_back({0, 0});
    int best = 0;
    while (!stack.empty()) {
      auto [d, i] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      if (best == L) return L;
      if (d == L) continue;
      for (int c = 0; c < b; ++c) {
        const std::uint64_t child = i * static_cast<std::uint64_t>(b) + c;
        if (uniform01(sp, layout.id(d + 1, child)) <= p) stack.push_back({d + 1, child});
      }
    }
    return best;
  };

  std::vector<std::uint64_t> successes(depths.size(), 0);
  // chunked like count_successes but tallying all depths in one pass
  std::vector<std::uint64_t> local(depths.size(), 0);
  auto tally = [&](std::uint64_t r, std::vector<std::uint64_t>& acc) {
    const int reach = max_reach(r);
    for (std::size_t k = 0; k < depths.size(); ++k)
      if (reach >= depths[k]) ++acc[k];
  };
  if (threads <= 1 || n_samples < 2) {
    for (std::uint64_t r = 0; r < n_samples; ++r) tally(r, successes);
  } else {
    const std::uint64_t t = std::min<std::uint64_t>(threads, n_samples);
    std::vector<std::vector<std::uint64_t>> parts(t, std::vector<std::uint64_t>(depths.size(), 0));
    std::vector<std::thread> pool;
    for (std::uint64_t k = 0; k < t; ++k) {
      const std::uint64_t lo = n_samples * k / t, hi = n_samples * (k + 1) / t;
      pool.emplace_back([&, k, lo, hi] {
        for (std::uint64_t r = lo; r < hi; ++r) tally(r, parts[k]);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : parts)
      for (std::size_t k = 0; k < depths.size(); ++k) successes[k] += part[k];
  }

  std::vector<EstimateCI> out;
  out.reserve(depths.size());
  for (std::uint64_t c : successes) out.push_back(wilson_estimate(c, n_samples));
  return out;
}

PcEstimate estimate_pc_curvature(int b, const std::vector<int>& depths,
                                 const std::vector<double>& p_grid, std::uint64_t n_samples,
                                 const Seed& seed, int threads) {
  if (depths.size() != 3) throw UsageError("estimate_pc_curvature: exactly three depths required");
  if (p_grid.size() < 2) throw UsageError("estimate_pc_curvature: grid needs at least two points");
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (p_grid[i] <= p_grid[i - 1]) throw UsageError("estimate_pc_curvature: grid must ascend");

  PcEstimate est;
  const double dl0 = static_cast<double>(depths[1] - depths[0]);
  const double dl1 = static_cast<double>(depths[2] - depths[1]);
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    Seed s = seed;
    s.replica = seed.replica + i * n_samples;  // fresh replicas per grid point
    auto thetas = plain_tree_theta_depths(b, depths, p_grid[i], n_samples, s, threads);
    PcCurvePoint pt;
    pt.p = p_grid[i];
    for (const auto& t : thetas) pt.theta.push_back(t.value);
    if (pt.theta[0] <= 0.0 || pt.theta[1] <= 0.0 || pt.theta[2] <= 0.0) {
      pt.curvature = std::numeric_limits<double>::infinity();  // deep subcritical
    } else {
      pt.curvature = (1.0 / pt.theta[2] - 1.0 / pt.theta[1]) / dl1 -
                     (1.0 / pt.theta[1] - 1.0 / pt.theta[0]) / dl0;
    }
    est.curve.push_back(std::move(pt));
  }
  for (std::size_t i = 0; i + 1 < est.curve.size(); ++i) {
    if (est.curve[i].curvature > 0.0 && est.curve[i + 1].curvature <= 0.0) {
      est.p_lo = est.curve[i].p;
      est.p_hi = est.curve[i + 1].p;
      est.p_hat = 0.5 * (est.p_lo + est.p_hi);
      return est;
    }
  }
  throw BracketError("estimate_pc_curvature: no curvature sign change on the grid");
}

}  // namespace percolab
