#include "vflow/segments.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace vflow {

std::vector<Segment> gen_segments(const Gvfg& g, int function) {
  std::vector<Segment> out;
  std::vector<int> mark(g.nodes.size(), -1);
  for (int start : g.function_nodes(function)) {
    if (!(g.nodes[start].roles & kSegmentStart)) continue;
    std::vector<int> stack{start}, reached;
    mark[start] = start;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : g.out[v]) {
        const GvfgEdge& edge = g.edges[e];
        if (!edge.label.is_epsilon() || mark[edge.dst] == start) continue;
        mark[edge.dst] = start;
        reached.push_back(edge.dst);
        stack.push_back(edge.dst);
      }
    }
    std::sort(reached.begin(), reached.end());
    for (int end : reached)
      if (end != start && (g.nodes[end].roles & kSegmentEnd)) out.push_back({-1, function, start, end});
  }
  return out;
}

SegmentSet gen_all_segments(const Gvfg& g, ThreadPool& pool) {
  std::vector<std::function<std::vector<Segment>()>> tasks;
  for (size_t f = 0; f < g.functions.size(); ++f)
    tasks.emplace_back([&g, f] { return gen_segments(g, static_cast<int>(f)); });
  auto parts = pool.submit_batch(std::move(tasks));
  SegmentSet s;
  s.by_function.resize(g.functions.size());
  for (auto& part : parts)
    for (auto& seg : part) {
      seg.id = static_cast<int>(s.segments.size());
      s.by_function[seg.function].push_back(seg.id);
      s.segments.push_back(seg);
    }
  return s;
}

void write_segments(std::ostream& os, const Gvfg& g, const SegmentSet& s) {
  std::vector<std::string> lines;
  for (const auto& seg : s.segments)
    lines.push_back("segment " + g.functions[seg.function] + " " + g.node_label(seg.start) + " " +
                    g.node_label(seg.end));
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) os << l << '\n';
}

}  // namespace vflow
