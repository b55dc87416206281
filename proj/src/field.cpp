#include "percolab/field.hpp"

namespace percolab {

LabelField sample_field(const FiniteGraph& g, const Seed& s) {
  LabelField f;
  f.seed = s;
  f.labels.resize(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) f.labels[v] = uniform01(s, v);
  return f;
}

Configuration empty_config(const FiniteGraph& g) {
  Configuration c;
  c.graph_id = g.id;
  c.members.assign(g.vertex_count, 0);
  c.count = 0;
  return c;
}

Configuration full_config(const FiniteGraph& g) {
  Configuration c;
  c.graph_id = g.id;
  c.members.assign(g.vertex_count, 1);
  c.count = g.vertex_count;
  return c;
}

Configuration make_config(const FiniteGraph& g, const std::vector<Vertex>& vertices) {
  Configuration c = empty_config(g);
  for (Vertex v : vertices) {
    if (v >= g.vertex_count) throw UsageError("configuration vertex out of range");
    if (!c.members[v]) {
      c.members[v] = 1;
      ++c.count;
    }
  }
  return c;
}

Configuration level_set(const FiniteGraph& g, const LabelField& f, double p) {
  if (p < 0.0 || p > 1.0) throw UsageError("level_set requires p in [0,1]");
  Configuration c = empty_config(g);
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (f.labels[v] <= p) {
      c.members[v] = 1;
      ++c.count;
    }
  }
  return c;
}

Configuration config_ops(const Configuration& a, const Configuration& b, SetOp op) {
  if (a.graph_id != b.graph_id) throw UsageError("config_ops: configurations on different graphs");
  Configuration out;
  out.graph_id = a.graph_id;
  out.members.resize(a.members.size());
  out.count = 0;
  for (std::size_t v = 0; v < a.members.size(); ++v) {
    std::uint8_t m = 0;
    switch (op) {
      case SetOp::Union: m = a.members[v] | b.members[v]; break;
      case SetOp::Difference: m = static_cast<std::uint8_t>(a.members[v] & !b.members[v]); break;
      case SetOp::Intersection: m = a.members[v] & b.members[v]; break;
    }
    out.members[v] = m;
    out.count += m;
  }
  return out;
}

bool is_subset(const Configuration& a, const Configuration& b) {
  if (a.graph_id != b.graph_id) throw UsageError("is_subset: configurations on different graphs");
  for (std::size_t v = 0; v < a.members.size(); ++v)
    if (a.members[v] && !b.members[v]) return false;
  return true;
}

}  // namespace percolab
