#include "percolab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "percolab/clusters.hpp"
#include "percolab/mtp.hpp"
#include "percolab/oracle.hpp"
#include "percolab/sdp.hpp"

namespace percolab {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

const std::string& require(const ExperimentConfig& cfg, const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end()) throw UsageError("missing config key '" + key + "'");
  return it->second;
}

std::string get_str(const ExperimentConfig& cfg, const std::string& key, const std::string& dflt) {
  auto it = cfg.find(key);
  return it == cfg.end() ? dflt : it->second;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': not a number: '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': not an integer: '" + s + "'");
  }
}

double get_double(const ExperimentConfig& cfg, const std::string& key, double dflt) {
  auto it = cfg.find(key);
  return it == cfg.end() ? dflt : parse_double(it->second, key);
}

double require_double(const ExperimentConfig& cfg, const std::string& key) {
  return parse_double(require(cfg, key), key);
}

long long get_int(const ExperimentConfig& cfg, const std::string& key, long long dflt) {
  auto it = cfg.find(key);
  return it == cfg.end() ? dflt : parse_int(it->second, key);
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, key));
  }
  if (out.empty()) throw UsageError("config key '" + key + "': empty list");
  return out;
}

Seed seed_from(const ExperimentConfig& cfg) {
  Seed s;
  s.master = static_cast<std::uint64_t>(get_int(cfg, "seed", 1));
  return s;
}

int threads_from(const ExperimentConfig& cfg) {
  return static_cast<int>(get_int(cfg, "threads", 1));
}

ThetaEvent event_from(const ExperimentConfig& cfg) {
  std::string e = get_str(cfg, "event", "origin");
  if (e == "origin") return ThetaEvent::OriginInInfiniteProxy;
  if (e == "n1") return ThetaEvent::NAtLeastOne;
  throw UsageError("config key 'event': expected origin|n1, got '" + e + "'");
}

void check_keys(const ExperimentConfig& cfg, const std::set<std::string>& allowed) {
  static const std::set<std::string> global = {"command", "out", "seed", "threads"};
  for (const auto& [k, v] : cfg) {
    if (!global.count(k) && !allowed.count(k))
      throw UsageError("unknown config key '" + k + "'");
  }
}

const std::set<std::string> kGraphKeys = {"family", "b", "L", "d", "n", "k"};

std::set<std::string> with_graph(std::initializer_list<std::string> extra) {
  std::set<std::string> s = kGraphKeys;
  s.insert(extra);
  return s;
}

std::string graph_columns(const FiniteGraph& g) { return g.describe(); }

// ---- individual experiments -------------------------------------------------

std::string run_graph_describe(const ExperimentConfig& cfg) {
  check_keys(cfg, kGraphKeys);
  FiniteGraph g = graph_from_config(cfg);
  std::ostringstream os;
  os << "graph,vertices,edges,boundary,origin_degree\n";
  os << graph_columns(g) << "," << g.vertex_count << "," << g.edge_count() << ","
     << g.boundary.size() << "," << g.degree(g.origin) << "\n";
  return os.str();
}

std::string run_graph_iso(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"subsets"}));
  FiniteGraph g = graph_from_config(cfg);
  std::string fam = get_str(cfg, "subsets", "balls");
  SubsetFamily family;
  if (fam == "balls") family = SubsetFamily::BallsAroundOrigin;
  else if (fam == "subtrees") family = SubsetFamily::Subtrees;
  else if (fam == "segments") family = SubsetFamily::PathSegments;
  else throw UsageError("config key 'subsets': expected balls|subtrees|segments");
  IsoProfile profile = isoperimetric_profile(g, family);
  std::ostringstream os;
  os << "graph,subset,size,boundary_size,ratio\n";
  for (const auto& e : profile.entries)
    os << graph_columns(g) << "," << e.descriptor << "," << e.subset_size << "," << e.boundary_size
       << "," << fmt(e.ratio) << "\n";
  return os.str();
}

std::string run_sweep(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"grid", "stat", "replicas"}));
  FiniteGraph g = graph_from_config(cfg);
  std::vector<double> grid = parse_list(require(cfg, "grid"), "grid");
  std::string stat_name = get_str(cfg, "stat", "origin");
  SweepStatistic stat;
  if (stat_name == "origin") stat = SweepStatistic::OriginPercolates;
  else if (stat_name == "ninf") stat = SweepStatistic::NInfinite;
  else if (stat_name == "density") stat = SweepStatistic::InfiniteDensity;
  else throw UsageError("config key 'stat': expected origin|ninf|density");
  std::uint64_t replicas = static_cast<std::uint64_t>(get_int(cfg, "replicas", 1));
  Seed seed = seed_from(cfg);
  std::ostringstream os;
  os << "p,statistic,replica,seed\n";
  for (std::uint64_t r = 0; r < replicas; ++r) {
    LabelField f = sample_field(g, Seed{seed.master, Stream::PrimaryField, r});
    for (const auto& pt : sweep_curve(g, f, grid, stat))
      os << fmt(pt.p) << "," << fmt(pt.value) << "," << r << "," << seed.master << "\n";
  }
  return os.str();
}

std::string sdp_header() {
  return "graph,p,delta,event,value,ci_low,ci_high,n_samples,seed\n";
}

std::string run_sdp_theta(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "delta", "event", "samples"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  double delta = require_double(cfg, "delta");
  ThetaOptions opt;
  opt.event = event_from(cfg);
  opt.n_samples = static_cast<std::uint64_t>(get_int(cfg, "samples", 10000));
  opt.seed = seed_from(cfg);
  opt.threads = threads_from(cfg);
  EstimateCI e = estimate_theta(g, p, delta, opt);
  std::ostringstream os;
  os << sdp_header();
  os << graph_columns(g) << "," << fmt(p) << "," << fmt(delta) << ","
     << get_str(cfg, "event", "origin") << "," << fmt(e.value) << "," << fmt(e.ci_low) << ","
     << fmt(e.ci_high) << "," << e.n_samples << "," << opt.seed.master << "\n";
  return os.str();
}

std::string run_sdp_deltac(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "event", "eps", "samples", "tol"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  DeltaCOptions opt;
  opt.event = event_from(cfg);
  opt.eps = get_double(cfg, "eps", 0.02);
  opt.n_samples = static_cast<std::uint64_t>(get_int(cfg, "samples", 2000));
  opt.tol = get_double(cfg, "tol", 0.01);
  opt.seed = seed_from(cfg);
  opt.threads = threads_from(cfg);
  EstimateCI e = estimate_delta_c(g, p, opt);
  std::ostringstream os;
  os << "# eps=" << fmt(opt.eps) << " event=" << get_str(cfg, "event", "origin") << "\n";
  os << "graph,p,delta_c,ci_low,ci_high,n_samples,seed\n";
  os << graph_columns(g) << "," << fmt(p) << "," << fmt(e.value) << "," << fmt(e.ci_low) << ","
     << fmt(e.ci_high) << "," << e.n_samples << "," << opt.seed.master << "\n";
  return os.str();
}

std::string run_sdp_removed_pc(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "event", "eps", "replicas", "inner", "tol"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  RemovedPcOptions opt;
  opt.event = event_from(cfg);
  opt.eps = get_double(cfg, "eps", 0.02);
  opt.n_replicas = static_cast<std::uint64_t>(get_int(cfg, "replicas", 20));
  opt.n_inner = static_cast<std::uint64_t>(get_int(cfg, "inner", 400));
  opt.tol = get_double(cfg, "tol", 0.01);
  opt.seed = seed_from(cfg);
  opt.threads = threads_from(cfg);
  EstimateCI e = removed_graph_threshold(g, p, opt);
  std::ostringstream os;
  os << "graph,p,q_hat,ci_low,ci_high,n_replicas,seed\n";
  os << graph_columns(g) << "," << fmt(p) << "," << fmt(e.value) << "," << fmt(e.ci_low) << ","
     << fmt(e.ci_high) << "," << e.n_samples << "," << opt.seed.master << "\n";
  return os.str();
}

std::string run_sdp_fresh_birth(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "delta", "pcref", "samples"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  double delta = require_double(cfg, "delta");
  FreshBirthOptions opt;
  opt.p_c_ref = get_double(cfg, "pcref", 0.5);
  opt.n_samples = static_cast<std::uint64_t>(get_int(cfg, "samples", 10000));
  opt.seed = seed_from(cfg);
  opt.threads = threads_from(cfg);
  EstimateCI e = fresh_birth_probe(g, p, delta, opt);
  std::ostringstream os;
  os << "graph,p,delta,pcref,value,ci_low,ci_high,n_samples,seed\n";
  os << graph_columns(g) << "," << fmt(p) << "," << fmt(delta) << "," << fmt(opt.p_c_ref) << ","
     << fmt(e.value) << "," << fmt(e.ci_low) << "," << fmt(e.ci_high) << "," << e.n_samples << ","
     << opt.seed.master << "\n";
  return os.str();
}

std::string run_oracle_theta(const ExperimentConfig& cfg) {
  check_keys(cfg, {"b", "p", "L"});
  int b = static_cast<int>(get_int(cfg, "b", 2));
  double p = require_double(cfg, "p");
  int L = static_cast<int>(parse_int(require(cfg, "L"), "L"));
  auto rec = oracle::tree_recursion(b, p, L);
  std::ostringstream os;
  os << "b,p,depth,q,theta\n";
  for (int l = 0; l <= L; ++l)
    os << b << "," << fmt(p) << "," << l << "," << fmt(rec.q_by_depth[l]) << ","
       << fmt(rec.theta_by_depth[l]) << "\n";
  return os.str();
}

std::string run_oracle_pc(const ExperimentConfig& cfg) {
  check_keys(cfg, {"b"});
  int b = static_cast<int>(get_int(cfg, "b", 2));
  std::ostringstream os;
  os << "b,pc\n" << b << "," << fmt(oracle::tree_pc(b)) << "\n";
  return os.str();
}

std::string run_oracle_enumerate(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "delta", "query", "limit"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  double delta = require_double(cfg, "delta");
  std::string qname = get_str(cfg, "query", "origin");
  std::uint32_t limit =
      static_cast<std::uint32_t>(get_int(cfg, "limit", oracle::kDefaultEnumerationLimit));
  oracle::PhiQuery query;
  if (qname == "origin") query = oracle::PhiQuery::OriginInInfiniteProxy;
  else if (qname == "n1") query = oracle::PhiQuery::NAtLeastOne;
  else if (qname == "dist") query = oracle::PhiQuery::FullDistributionOfN;
  else throw UsageError("config key 'query': expected origin|n1|dist");
  auto res = oracle::enumerate_phi_exact(g, p, delta, query, limit);
  std::ostringstream os;
  if (query == oracle::PhiQuery::FullDistributionOfN) {
    os << "graph,p,delta,n_clusters,probability\n";
    for (std::size_t k = 0; k < res.distribution.size(); ++k)
      os << graph_columns(g) << "," << fmt(p) << "," << fmt(delta) << "," << k << ","
         << fmt(res.distribution[k]) << "\n";
  } else {
    os << "graph,p,delta,query,value\n";
    os << graph_columns(g) << "," << fmt(p) << "," << fmt(delta) << "," << qname << ","
       << fmt(res.value) << "\n";
  }
  return os.str();
}

std::string run_mtp_check(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"functions"}));
  FiniteGraph g = graph_from_config(cfg);
  int count = static_cast<int>(get_int(cfg, "functions", 1));
  Seed seed = seed_from(cfg);
  std::ostringstream os;
  os << "graph,function,sum_out,sum_in,abs_diff\n";
  for (int i = 0; i < count; ++i) {
    TransportFunction f =
        displacement_invariant_transport(g, Seed{seed.master, Stream::ForestLabels,
                                                 static_cast<std::uint64_t>(i)});
    auto [out, in] = mtp_check(g, f);
    os << graph_columns(g) << "," << i << "," << fmt(out) << "," << fmt(in) << ","
       << fmt(std::abs(out - in)) << "\n";
  }
  return os.str();
}

std::string run_mtp_encounter(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  Seed seed = seed_from(cfg);
  LabelField f = sample_field(g, Seed{seed.master, Stream::PrimaryField, 0});
  Configuration omega = level_set(g, f, p);
  auto y = find_encounter_points(g, omega);
  std::ostringstream os;
  os << "graph,p,vertex\n";
  for (Vertex v : y) os << graph_columns(g) << "," << fmt(p) << "," << v << "\n";
  return os.str();
}

std::string run_mtp_forest(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  Seed seed = seed_from(cfg);
  LabelField f = sample_field(g, Seed{seed.master, Stream::PrimaryField, 0});
  Configuration omega = level_set(g, f, p);
  LabelField x = sample_field(g, Seed{seed.master, Stream::ForestLabels, 0});
  Forest forest = build_forest(g, omega, x.labels);
  std::ostringstream os;
  os << "# acyclic=" << (forest.acyclic ? 1 : 0) << " encounter_points=" << forest.vertices.size()
     << "\n";
  os << "graph,p,u,v\n";
  for (auto [a, b] : forest.edges) os << graph_columns(g) << "," << fmt(p) << "," << a << "," << b << "\n";
  return os.str();
}

std::string run_mtp_eq2(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "gamma", "samples", "reading"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  std::vector<double> gamma = parse_list(require(cfg, "gamma"), "gamma");
  BoundaryIneqOptions opt;
  opt.n_samples = static_cast<std::uint64_t>(get_int(cfg, "samples", 400));
  opt.seed = seed_from(cfg);
  std::string reading = get_str(cfg, "reading", "all");
  if (reading == "all") opt.reading = BoundaryReading::AllForestVertices;
  else if (reading == "members") opt.reading = BoundaryReading::KMembersOnly;
  else throw UsageError("config key 'reading': expected all|members");
  auto rows = boundary_inequality_stats(g, p, gamma, opt);
  std::ostringstream os;
  os << "# boundary_reading=" << reading << " (which vertices count as the K-boundary)\n";
  os << "graph,p,p_gamma,lhs,lhs_se,rhs,rhs_se,origin_in_gamma,holds_3sigma,n_samples,seed\n";
  for (const auto& row : rows)
    os << graph_columns(g) << "," << fmt(p) << "," << fmt(row.p_gamma) << "," << fmt(row.lhs.value)
       << "," << fmt(row.lhs.stderr_value) << "," << fmt(row.rhs.value) << ","
       << fmt(row.rhs.stderr_value) << "," << fmt(row.origin_in_gamma.value) << ","
       << (row.holds_within_3sigma ? 1 : 0) << "," << opt.n_samples << "," << opt.seed.master
       << "\n";
  return os.str();
}

std::string run_mtp_xi(const ExperimentConfig& cfg) {
  check_keys(cfg, with_graph({"p", "gammap", "radius"}));
  FiniteGraph g = graph_from_config(cfg);
  double p = require_double(cfg, "p");
  double gamma_p = get_double(cfg, "gammap", 0.0);
  int radius = static_cast<int>(get_int(cfg, "radius", 1));
  Seed seed = seed_from(cfg);
  LabelField f = sample_field(g, Seed{seed.master, Stream::PrimaryField, 0});
  Configuration omega = level_set(g, f, p);
  ClusterLabeling l = label_clusters(g, omega);
  Configuration gamma_omega = level_set(g, f, gamma_p);
  ClusterLabeling lg = label_clusters(g, gamma_omega);
  Configuration gamma = infinite_proxy(g, lg, gamma_omega);
  Configuration xi = build_xi(g, omega, gamma, radius);
  std::ostringstream os;
  os << "graph,p,gammap,radius,vertex\n";
  for (Vertex v = 0; v < g.vertex_count; ++v)
    if (xi.members[v])
      os << graph_columns(g) << "," << fmt(p) << "," << fmt(gamma_p) << "," << radius << "," << v
         << "\n";
  return os.str();
}

std::string run_report(const ExperimentConfig& cfg) {
  check_keys(cfg, {"input", "x", "y"});
  std::ifstream in(require(cfg, "input"));
  if (!in) throw UsageError("report: cannot open input '" + require(cfg, "input") + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return emit_plotdata(buf.str(), get_str(cfg, "x", "p"), get_str(cfg, "y", "value"));
}

}  // namespace

FiniteGraph graph_from_config(const ExperimentConfig& cfg) {
  std::string fam = require(cfg, "family");
  if (fam == "tree")
    return build_rooted_tree(static_cast<int>(get_int(cfg, "b", 2)),
                             static_cast<int>(parse_int(require(cfg, "L"), "L")));
  if (fam == "rtree")
    return build_regular_tree(static_cast<int>(get_int(cfg, "d", 3)),
                              static_cast<int>(parse_int(require(cfg, "L"), "L")));
  if (fam == "torus")
    return build_torus(static_cast<int>(get_int(cfg, "d", 1)),
                       static_cast<int>(parse_int(require(cfg, "n"), "n")));
  if (fam == "treecycle")
    return build_tree_cycle(static_cast<int>(get_int(cfg, "b", 2)),
                            static_cast<int>(parse_int(require(cfg, "L"), "L")),
                            static_cast<int>(get_int(cfg, "k", 3)));
  throw UsageError("config key 'family': expected tree|rtree|torus|treecycle, got '" + fam + "'");
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config file " + path + ":" + std::to_string(lineno) +
                       ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError("config file " + path + ": empty key");
    cfg[key] = value;
  }
  return cfg;
}

std::string run_experiment_to_csv(const ExperimentConfig& cfg) {
  std::string command = require(cfg, "command");
  if (command == "graph.describe") return run_graph_describe(cfg);
  if (command == "graph.iso") return run_graph_iso(cfg);
  if (command == "sweep") return run_sweep(cfg);
  if (command == "sdp.theta") return run_sdp_theta(cfg);
  if (command == "sdp.deltac") return run_sdp_deltac(cfg);
  if (command == "sdp.removed-pc") return run_sdp_removed_pc(cfg);
  if (command == "sdp.fresh-birth") return run_sdp_fresh_birth(cfg);
  if (command == "oracle.theta") return run_oracle_theta(cfg);
  if (command == "oracle.pc") return run_oracle_pc(cfg);
  if (command == "oracle.enumerate") return run_oracle_enumerate(cfg);
  if (command == "mtp.check") return run_mtp_check(cfg);
  if (command == "mtp.encounter") return run_mtp_encounter(cfg);
  if (command == "mtp.forest") return run_mtp_forest(cfg);
  if (command == "mtp.eq2") return run_mtp_eq2(cfg);
  if (command == "mtp.xi") return run_mtp_xi(cfg);
  if (command == "report") return run_report(cfg);
  throw UsageError("unknown command '" + command + "'");
}

void run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::string csv = run_experiment_to_csv(cfg);
  const auto end = std::chrono::steady_clock::now();
  auto it = cfg.find("out");
  if (it == cfg.end()) {
    std::cout << csv;
    return;
  }
  {
    std::ofstream out(it->second, std::ios::binary);
    if (!out) throw UsageError("cannot write output file '" + it->second + "'");
    out << csv;
  }
  std::ofstream manifest(it->second + ".manifest");
  manifest << "# percolab run manifest\n";
  manifest << "version = 1.0.0\n";
  for (const auto& [k, v] : cfg) manifest << k << " = " << v << "\n";
  manifest << "wall_ms = "
           << std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count() << "\n";
}

std::string emit_plotdata(const std::string& csv_text, const std::string& x_column,
                          const std::string& y_column) {
  std::stringstream in(csv_text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) header.push_back(trim(cell));
    break;
  }
  std::ostringstream os;
  os << "x,y,y_lo,y_hi\n";
  if (header.empty()) return os.str();
  auto x_it = std::find(header.begin(), header.end(), x_column);
  auto y_it = std::find(header.begin(), header.end(), y_column);
  if (x_it == header.end()) throw UsageError("plotdata: missing column '" + x_column + "'");
  if (y_it == header.end()) throw UsageError("plotdata: missing column '" + y_column + "'");
  const std::size_t xi = static_cast<std::size_t>(x_it - header.begin());
  const std::size_t yi = static_cast<std::size_t>(y_it - header.begin());

  // group by x in first-seen order
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
    if (cells.size() <= std::max(xi, yi)) throw UsageError("plotdata: short row in input");
    if (!groups.count(cells[xi])) order.push_back(cells[xi]);
    groups[cells[xi]].push_back(parse_double(cells[yi], y_column));
  }
  for (const auto& key : order) {
    const auto& ys = groups[key];
    EstimateCI e = mean_estimate(ys.data(), ys.size());
    os << key << "," << fmt(e.value) << "," << fmt(e.ci_low) << "," << fmt(e.ci_high) << "\n";
  }
  return os.str();
}

}  // namespace percolab
