#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "percolab/experiment.hpp"
#include "percolab/sdp.hpp"

namespace {

using percolab::ExperimentConfig;

// Every flag funnels into the same flat config map the config-file path uses,
// so `--config run.cfg` and explicit flags are interchangeable.
void bind_key(CLI::App* app, ExperimentConfig& cfg, const std::string& key,
              const std::string& desc) {
  app->add_option_function<std::string>(
      "--" + key, [&cfg, key](const std::string& v) { cfg[key] = v; }, desc);
}

void bind_graph_keys(CLI::App* app, ExperimentConfig& cfg) {
  bind_key(app, cfg, "family", "graph family: tree|rtree|torus|treecycle");
  bind_key(app, cfg, "b", "branching factor (tree families)");
  bind_key(app, cfg, "L", "depth / radius");
  bind_key(app, cfg, "d", "degree (rtree) or dimension (torus)");
  bind_key(app, cfg, "n", "torus side length");
  bind_key(app, cfg, "k", "cycle length (treecycle)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolab: Bernoulli and self-destructive site percolation on finite graph truncations"};
  app.require_subcommand(0, 1);

  ExperimentConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "config file with key = value lines");
  app.add_option_function<std::string>(
      "--seed", [&cfg](const std::string& v) { cfg["seed"] = v; }, "master seed");
  app.add_option_function<std::string>(
      "--samples", [&cfg](const std::string& v) { cfg["samples"] = v; }, "sample count");
  app.add_option_function<std::string>(
      "--out", [&cfg](const std::string& v) { cfg["out"] = v; }, "output CSV path");
  app.add_option_function<std::string>(
      "--threads", [&cfg](const std::string& v) { cfg["threads"] = v; }, "worker threads");

  auto set_command = [&cfg](const std::string& name) {
    return [&cfg, name]() { cfg["command"] = name; };
  };

  // graph
  auto* graph = app.add_subcommand("graph", "graph construction and profiles");
  auto* describe = graph->add_subcommand("describe", "vertex/edge/boundary counts");
  bind_graph_keys(describe, cfg);
  describe->callback(set_command("graph.describe"));
  auto* iso = graph->add_subcommand("iso", "isoperimetric profile");
  bind_graph_keys(iso, cfg);
  bind_key(iso, cfg, "subsets", "subset family: balls|subtrees|segments");
  iso->callback(set_command("graph.iso"));

  // sweep
  auto* sweep = app.add_subcommand("sweep", "incremental statistic sweep over a p grid");
  bind_graph_keys(sweep, cfg);
  bind_key(sweep, cfg, "grid", "ascending comma-separated p values");
  bind_key(sweep, cfg, "stat", "statistic: origin|ninf|density");
  bind_key(sweep, cfg, "replicas", "independent fields");
  sweep->callback(set_command("sweep"));

  // sdp
  auto* sdp = app.add_subcommand("sdp", "self-destructive percolation experiments");
  auto* theta = sdp->add_subcommand("theta", "event frequency of phi(p,delta)");
  bind_graph_keys(theta, cfg);
  bind_key(theta, cfg, "p", "primary intensity");
  bind_key(theta, cfg, "delta", "reinforcement intensity");
  bind_key(theta, cfg, "event", "origin|n1");
  theta->callback(set_command("sdp.theta"));
  auto* deltac = sdp->add_subcommand("deltac", "critical reinforcement threshold");
  bind_graph_keys(deltac, cfg);
  bind_key(deltac, cfg, "p", "primary intensity");
  bind_key(deltac, cfg, "event", "origin|n1");
  bind_key(deltac, cfg, "eps", "event-frequency level");
  bind_key(deltac, cfg, "tol", "bisection bracket tolerance");
  deltac->callback(set_command("sdp.deltac"));
  auto* removed = sdp->add_subcommand("removed-pc", "threshold of the graph minus destroyed sites");
  bind_graph_keys(removed, cfg);
  bind_key(removed, cfg, "p", "primary intensity");
  bind_key(removed, cfg, "event", "origin|n1");
  bind_key(removed, cfg, "eps", "event-frequency level");
  bind_key(removed, cfg, "replicas", "outer replicas");
  bind_key(removed, cfg, "inner", "fresh patterns per probed q");
  bind_key(removed, cfg, "tol", "bisection bracket tolerance");
  removed->callback(set_command("sdp.removed-pc"));
  auto* fresh = sdp->add_subcommand("fresh-birth", "clusters born above the removed configuration");
  bind_graph_keys(fresh, cfg);
  bind_key(fresh, cfg, "p", "removal intensity");
  bind_key(fresh, cfg, "delta", "margin above the reference threshold");
  bind_key(fresh, cfg, "pcref", "reference critical probability");
  fresh->callback(set_command("sdp.fresh-birth"));

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact reference computations");
  auto* otheta = orc->add_subcommand("theta", "tree recursion depth curve");
  bind_key(otheta, cfg, "b", "branching factor");
  bind_key(otheta, cfg, "p", "site intensity");
  bind_key(otheta, cfg, "L", "max depth");
  otheta->callback(set_command("oracle.theta"));
  auto* opc = orc->add_subcommand("pc", "tree critical probability");
  bind_key(opc, cfg, "b", "branching factor");
  opc->callback(set_command("oracle.pc"));
  auto* oenum = orc->add_subcommand("enumerate", "exact phi law by exhaustive summation");
  bind_graph_keys(oenum, cfg);
  bind_key(oenum, cfg, "p", "primary intensity");
  bind_key(oenum, cfg, "delta", "reinforcement intensity");
  bind_key(oenum, cfg, "query", "origin|n1|dist");
  bind_key(oenum, cfg, "limit", "enumeration vertex limit");
  oenum->callback(set_command("oracle.enumerate"));

  // mtp
  auto* mtp = app.add_subcommand("mtp", "mass-transport diagnostics");
  auto* check = mtp->add_subcommand("check", "transport sums on a transitive graph");
  bind_graph_keys(check, cfg);
  bind_key(check, cfg, "functions", "number of random invariant transports");
  check->callback(set_command("mtp.check"));
  auto* enc = mtp->add_subcommand("encounter", "encounter points of one sample");
  bind_graph_keys(enc, cfg);
  bind_key(enc, cfg, "p", "site intensity");
  enc->callback(set_command("mtp.encounter"));
  auto* forest = mtp->add_subcommand("forest", "nearest-encounter-point forest of one sample");
  bind_graph_keys(forest, cfg);
  bind_key(forest, cfg, "p", "site intensity");
  forest->callback(set_command("mtp.forest"));
  auto* eq2 = mtp->add_subcommand("eq2", "forest-boundary inequality statistics");
  bind_graph_keys(eq2, cfg);
  bind_key(eq2, cfg, "p", "site intensity");
  bind_key(eq2, cfg, "gamma", "non-increasing comma-separated gamma intensities");
  bind_key(eq2, cfg, "reading", "K-boundary reading: all|members");
  eq2->callback(set_command("mtp.eq2"));
  auto* xi = mtp->add_subcommand("xi", "xi construction in the unique-cluster regime");
  bind_graph_keys(xi, cfg);
  bind_key(xi, cfg, "p", "site intensity");
  bind_key(xi, cfg, "gammap", "gamma level-set intensity");
  bind_key(xi, cfg, "radius", "distance cutoff to the unique cluster");
  xi->callback(set_command("mtp.xi"));

  // report
  auto* report = app.add_subcommand("report", "reshape experiment CSV into plot series");
  bind_key(report, cfg, "input", "input CSV path");
  bind_key(report, cfg, "x", "x column name");
  bind_key(report, cfg, "y", "y column name");
  report->callback(set_command("report"));

  // let the global flags (--seed, --samples, --out, --threads, --config)
  // appear after any subcommand
  auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
    for (CLI::App* sub : a->get_subcommands(nullptr)) {
      sub->fallthrough();
      self(sub, self);
    }
  };
  enable_fallthrough(&app, enable_fallthrough);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad flags are usage errors; --help stays 0
  }

  try {
    if (!config_path.empty()) {
      ExperimentConfig from_file = percolab::load_config_file(config_path);
      // explicit flags override file values
      for (auto& [k, v] : cfg) from_file[k] = v;
      cfg = std::move(from_file);
    }
    if (!cfg.count("command")) {
      std::cerr << "error: no subcommand given (and no 'command' key in config)\n";
      return 2;
    }
    percolab::run_experiment(cfg);
    return 0;
  } catch (const percolab::BracketError& e) {
    std::cerr << "bracket error: " << e.what() << "\n";
    return 3;
  } catch (const percolab::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const percolab::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
