// End-to-end acceptance checks. Each test prints one PASS/FAIL line with the
// measured numbers so a failed run is diagnosable from the log alone.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "percolab/experiment.hpp"
#include "percolab/mtp.hpp"
#include "percolab/oracle.hpp"
#include "percolab/sdp.hpp"
#include "test_support.hpp"

using namespace percolab;
using namespace percolab::testsupport;

namespace {

constexpr int kThreads = 4;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
            << std::endl;
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", what);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

TEST_CASE("1: simulated origin-percolation frequency matches the exact recursion") {
  const double exact = oracle::tree_theta_depth(2, 0.6, 12);
  auto est = plain_tree_theta_depths(2, {12}, 0.6, 100000, Seed{1001, Stream::PrimaryField, 0},
                                     kThreads);
  const double dev = std::abs(est[0].value - exact) / est[0].stderr_value;
  report(1, dev <= 3.0,
         "depth-12 binary tree, p=0.6: estimate " + num(est[0].value) + " vs exact " + num(exact) +
             " (" + num(dev) + " standard errors, limit 3)");
}

TEST_CASE("2: finite-size curves localize the binary-tree threshold") {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(0.46 + 0.01 * i);
  auto est = estimate_pc_curvature(2, {8, 10, 12}, grid, 600000,
                                   Seed{1002, Stream::PrimaryField, 0}, kThreads);
  const bool ok = est.p_hat >= 0.48 && est.p_hat <= 0.52;
  report(2, ok,
         "p_c estimate " + num(est.p_hat) + " from bracket [" + num(est.p_lo) + ", " +
             num(est.p_hi) + "], required within [0.48, 0.52] (true value 0.5)");
}

TEST_CASE("3: simulated reinforced-process frequency matches exhaustive enumeration") {
  auto g = build_rooted_tree(2, 2);
  const double p = 0.6, delta = 0.1;
  const double exact =
      oracle::enumerate_phi_exact(g, p, delta, oracle::PhiQuery::OriginInInfiniteProxy).value;
  ThetaOptions opt;
  opt.event = ThetaEvent::OriginInInfiniteProxy;
  opt.n_samples = 1000000;
  opt.seed = Seed{1003, Stream::PrimaryField, 0};
  opt.threads = kThreads;
  auto est = estimate_theta(g, p, delta, opt);
  const double dev = std::abs(est.value - exact) / est.stderr_value;
  report(3, dev <= 4.0,
         "7-vertex tree, p=0.6, delta=0.1: estimate " + num(est.value) + " vs exact " +
             num(exact) + " (" + num(dev) + " standard errors, limit 4)");
}

namespace {

// Shared settings for the reinforcement-threshold searches on the depth-14
// binary tree. The level eps is the exact critical-depth value theta_14(1/2),
// so for a subcritical base intensity (nothing destroyed) the search resolves
// the effective-intensity equation p + delta - p*delta = 1/2 by construction.
DeltaCOptions delta_c_options() {
  DeltaCOptions opt;
  opt.event = ThetaEvent::OriginInInfiniteProxy;
  opt.eps = oracle::tree_theta_depth(2, 0.5, 14);
  opt.n_samples = 1500;
  opt.tol = 0.01;
  opt.seed = Seed{1004, Stream::PrimaryField, 0};
  opt.threads = kThreads;
  return opt;
}

}  // namespace

TEST_CASE("4: subcritical base reduces to plain percolation") {
  auto g = build_rooted_tree(2, 14);
  auto est = estimate_delta_c(g, 0.3, delta_c_options());
  const double want = 2.0 / 7.0;
  report(4, std::abs(est.value - want) <= 0.05,
         "delta_c estimate at p=0.3: " + num(est.value) + " vs closed form 2/7 = " + num(want) +
             " (tolerance 0.05)");
}

TEST_CASE("5: reinforcement threshold grows with the base intensity") {
  auto g = build_rooted_tree(2, 14);
  const std::vector<double> ps{0.55, 0.6, 0.7, 0.8};
  std::vector<EstimateCI> est;
  std::cout << "  reinforcement-threshold curve (p, delta_c, ci):" << std::endl;
  for (double p : ps) {
    est.push_back(estimate_delta_c(g, p, delta_c_options()));
    std::cout << "    " << num(p) << ", " << num(est.back().value) << ", [" +
                     num(est.back().ci_low) + ", " + num(est.back().ci_high) + "]"
              << std::endl;
  }
  bool increasing = true;
  for (std::size_t i = 1; i < est.size(); ++i)
    if (est[i].value < est[i - 1].value) increasing = false;
  const bool separated = est.front().ci_high < est.back().ci_low;
  report(5, increasing && separated,
         "delta_c(0.55)=" + num(est.front().value) + " ... delta_c(0.8)=" + num(est.back().value) +
             "; increasing=" + (increasing ? "yes" : "no") +
             ", end CIs disjoint=" + (separated ? "yes" : "no"));
}

TEST_CASE("6: thresholds of damaged graphs sit above the intact one and fall back toward it") {
  auto g = build_rooted_tree(2, 12);
  RemovedPcOptions opt;
  opt.event = ThetaEvent::OriginInInfiniteProxy;
  opt.eps = oracle::tree_theta_depth(2, 0.5, 12);
  opt.n_replicas = 24;
  opt.n_inner = 400;
  opt.tol = 0.01;
  opt.seed = Seed{1006, Stream::PrimaryField, 0};
  opt.threads = kThreads;

  auto plain = removed_graph_threshold(g, 0.0, opt);  // p=0: nothing is removed
  const std::vector<double> ps{0.8, 0.7, 0.6, 0.55};  // descending toward criticality
  std::vector<EstimateCI> est;
  std::cout << "  damaged-graph threshold curve (p, q_hat, se); intact q_hat=" << num(plain.value)
            << std::endl;
  for (double p : ps) {
    est.push_back(removed_graph_threshold(g, p, opt));
    std::cout << "    " << num(p) << ", " << num(est.back().value) << ", "
              << num(est.back().stderr_value) << std::endl;
  }
  bool above = true, monotone = true;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (est[i].value < plain.value - 2 * (est[i].stderr_value + plain.stderr_value)) above = false;
    if (i > 0 && est[i].value > est[i - 1].value +
                                    2 * (est[i].stderr_value + est[i - 1].stderr_value))
      monotone = false;
  }
  const bool strict = est.front().value >
                      plain.value + 2 * (est.front().stderr_value + plain.stderr_value);
  report(6, above && monotone && strict,
         "q_hat(0.8)=" + num(est.front().value) + " ... q_hat(0.55)=" + num(est.back().value) +
             " vs intact " + num(plain.value) + "; above=" + (above ? "yes" : "no") +
             ", falling=" + (monotone ? "yes" : "no") +
             ", strictly above at p=0.8=" + (strict ? "yes" : "no"));
}

TEST_CASE("7: fresh percolation appears just above criticality despite the damage") {
  auto g = build_rooted_tree(2, 12);
  FreshBirthOptions opt;
  opt.p_c_ref = 0.5;
  opt.n_samples = 5000;
  opt.seed = Seed{1007, Stream::PrimaryField, 0};
  opt.threads = kThreads;
  bool any_positive = false;
  double best = 0.0, best_p = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double p = 0.5 + 0.01 * i;
    auto est = fresh_birth_probe(g, p, 0.1, opt);
    if (est.ci_low > 0.0 && est.value > best) {
      any_positive = true;
      best = est.value;
      best_p = p;
    }
  }
  report(7, any_positive,
         any_positive ? "frequency " + num(best) + " at p=" + num(best_p) +
                            " with 95% CI excluding 0"
                      : "no probed p in {0.51..0.60} had a CI excluding 0");
}

TEST_CASE("8: transport sums balance exactly on toral graphs") {
  double worst = 0.0;
  for (auto g : {build_torus(1, 12), build_torus(2, 4)}) {
    for (std::uint64_t r = 0; r < 100; ++r) {
      auto f = displacement_invariant_transport(g, Seed{1008, Stream::ForestLabels, r});
      auto [out, in] = mtp_check(g, f);
      worst = std::max(worst, std::abs(out - in));
    }
  }
  report(8, worst <= 1e-12,
         "200 random invariant transports, worst |sum_out - sum_in| = " + num(worst) +
             " (limit 1e-12)");
}

TEST_CASE("9: encounter points and forests match a naive reference on every configuration") {
  auto g = build_regular_tree(3, 2);  // 10 vertices, 1024 open patterns
  std::vector<double> x(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v)
    x[v] = uniform01({1009, Stream::ForestLabels, 0}, v);

  std::uint32_t mismatches = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.vertex_count); ++mask) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < g.vertex_count; ++v)
      if (mask & (1u << v)) members.push_back(v);
    auto omega = make_config(g, members);
    if (find_encounter_points(g, omega) != naive_encounter_points(g, omega)) ++mismatches;
    auto forest = build_forest(g, omega, x);
    std::set<std::pair<Vertex, Vertex>> edges(forest.edges.begin(), forest.edges.end());
    if (edges != naive_forest_edges(g, omega, x)) ++mismatches;
  }
  report(9, mismatches == 0,
         "all 1024 patterns on the 10-vertex ball checked, " + std::to_string(mismatches) +
             " mismatches against the independent reference");
}

TEST_CASE("10: forest-boundary inequality holds along a vanishing removal sequence") {
  auto g = build_regular_tree(3, 10);
  BoundaryIneqOptions opt;
  opt.n_samples = 400;
  opt.seed = Seed{1010, Stream::PrimaryField, 0};
  // removal levels 0.5 + 0.2/n for n = 2, 4, 8
  auto rows = boundary_inequality_stats(g, 0.7, {0.6, 0.55, 0.525}, opt);
  REQUIRE(rows.size() == 3);
  bool holds = true, shrinking = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].holds_within_3sigma) holds = false;
    if (i > 0 && rows[i].origin_in_gamma.value > rows[i - 1].origin_in_gamma.value)
      shrinking = false;
    detail << (i ? "; " : "") << "level " << num(rows[i].p_gamma) << ": lhs "
           << num(rows[i].lhs.value) << " vs 2*rhs " << num(2 * rows[i].rhs.value)
           << ", removal density " << num(rows[i].origin_in_gamma.value);
  }
  report(10, holds && shrinking, detail.str());
}

TEST_CASE("11: expanding subtrees versus flat cycle segments") {
  auto tree = build_rooted_tree(2, 9);
  auto tprof = isoperimetric_profile(tree, SubsetFamily::Subtrees);
  bool tree_ok = true;
  int depths_checked = 0;
  for (const auto& e : tprof.entries) {
    // depth-t subtree: 2^{t+1}-1 vertices, 2^t of them with outside neighbours
    if (e.subset_size < 3 || e.subset_size >= tree.vertex_count) continue;
    ++depths_checked;
    if (e.ratio < 0.4) tree_ok = false;
  }
  auto cyc = build_torus(1, 12);
  auto cprof = isoperimetric_profile(cyc, SubsetFamily::PathSegments);
  bool cyc_ok = true;
  for (const auto& e : cprof.entries)
    if (e.subset_size >= 2 && (e.boundary_size != 2 || e.ratio != 2.0 / double(e.subset_size)))
      cyc_ok = false;
  report(11, tree_ok && depths_checked >= 8 && cyc_ok,
         "binary-tree subtree ratios at depths 1..8 all >= 0.4: " + std::string(tree_ok ? "yes" : "no") +
             "; 12-cycle segment ratios equal 2/k exactly: " + std::string(cyc_ok ? "yes" : "no"));
}

TEST_CASE("12: experiments reproduce byte for byte") {
  bool ok = true;
  ExperimentConfig theta{{"command", "sdp.theta"}, {"family", "tree"}, {"b", "2"},
                         {"L", "8"},              {"p", "0.6"},       {"delta", "0.1"},
                         {"samples", "20000"},    {"seed", "12"},     {"threads", "4"}};
  if (run_experiment_to_csv(theta) != run_experiment_to_csv(theta)) ok = false;
  ExperimentConfig sweep{{"command", "sweep"},        {"family", "treecycle"}, {"b", "2"},
                         {"L", "4"},                  {"k", "3"},              {"grid", "0,0.25,0.5,0.75,1"},
                         {"stat", "density"},         {"replicas", "20"},      {"seed", "12"}};
  if (run_experiment_to_csv(sweep) != run_experiment_to_csv(sweep)) ok = false;
  report(12, ok, "two seeded experiment reruns produced byte-identical CSV");
}
