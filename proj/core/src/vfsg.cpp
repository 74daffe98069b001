#include "vflow/vfsg.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace vflow {

bool Vfsg::is_source(int id) const { return gvfg->nodes[segment(id).start].has(kSource); }
bool Vfsg::is_sink(int id) const { return gvfg->nodes[segment(id).end].has(kSink); }

size_t Vfsg::edge_count() const {
  size_t n = 0;
  for (const auto& o : out) n += o.size();
  return n;
}

Vfsg build_vfsg(SegmentSet segments, const Gvfg& g) {
  Vfsg v;
  v.gvfg = &g;
  v.segments = std::move(segments);
  const auto& segs = v.segments.segments;
  std::map<int, std::vector<int>> starting_at;
  for (const auto& s : segs) starting_at[s.start].push_back(s.id);

  v.out.resize(segs.size());
  for (const auto& s : segs) {
    for (int e : g.out[s.end]) {
      const GvfgEdge& edge = g.edges[e];
      if (edge.label.is_epsilon()) continue;
      auto it = starting_at.find(edge.dst);
      if (it == starting_at.end()) continue;
      for (int t : it->second) v.out[s.id].push_back({s.id, t, edge.label});
    }
    std::sort(v.out[s.id].begin(), v.out[s.id].end(), [](const VfsgEdge& a, const VfsgEdge& b) {
      return std::tie(a.to, a.label) < std::tie(b.to, b.label);
    });
    if (v.is_source(s.id)) v.sources.push_back(s.id);
    if (v.is_sink(s.id)) v.sinks.push_back(s.id);
  }
  return v;
}

std::pair<bool, DyckState> concatenable(const Vfsg& v, int lf, int lg, const DyckState& s) {
  for (const auto& e : v.out.at(lf)) {
    if (e.to != lg) continue;
    DyckStep r = step(s, e.label);
    return {r.ok(), r.ok() ? r.state : s};
  }
  return {false, s};
}

void write_dot(std::ostream& os, const Vfsg& v) {
  const Gvfg& g = *v.gvfg;
  os << "digraph vfsg {\n  node [shape=box];\n";
  for (const auto& s : v.segments.segments) {
    os << "  s" << s.id << " [label=\"l" << s.id << " " << g.functions[s.function] << ": "
       << g.node_label(s.start) << " -> " << g.node_label(s.end) << "\"";
    if (v.is_source(s.id)) os << ", style=bold";
    if (v.is_sink(s.id)) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& edges : v.out)
    for (const auto& e : edges)
      os << "  s" << e.from << " -> s" << e.to << " [label=\"" << e.label.text() << "\"];\n";
  os << "}\n";
}

}  // namespace vflow
