#pragma once

#include <vector>

#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// i.i.d. uniform-[0,1) labels per vertex, realizing the monotone coupling:
// the p-open set is the label level set {v : label(v) <= p}.
struct LabelField {
  Seed seed;
  std::vector<double> labels;
};

// An open-site pattern on a specific graph.
struct Configuration {
  std::uint64_t graph_id = 0;
  std::vector<std::uint8_t> members;  // one flag per vertex
  std::uint64_t count = 0;

  bool contains(Vertex v) const { return members[v] != 0; }
};

LabelField sample_field(const FiniteGraph& g, const Seed& s);

// Single-label evaluation; identical to sample_field(g, s).labels[v].
inline double label_at(const Seed& s, Vertex v) { return uniform01(s, v); }

Configuration empty_config(const FiniteGraph& g);
Configuration full_config(const FiniteGraph& g);
Configuration make_config(const FiniteGraph& g, const std::vector<Vertex>& vertices);

// {v : label(v) <= p}; monotone in p on a fixed field.
Configuration level_set(const FiniteGraph& g, const LabelField& f, double p);

enum class SetOp { Union, Difference, Intersection };

Configuration config_ops(const Configuration& a, const Configuration& b, SetOp op);

bool is_subset(const Configuration& a, const Configuration& b);

}  // namespace percolab
