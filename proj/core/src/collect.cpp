#include "vflow/collect.hpp"

namespace vflow {

std::vector<IntraPath> enumerate_intra_paths(const Gvfg& g, const Segment& seg, IntraCounters* counters) {
  if (counters) counters->hit(seg.id);
  // Nodes that reach the end through epsilon edges; the search stays inside them.
  std::vector<char> useful(g.nodes.size(), 0);
  std::vector<int> stack{seg.end};
  useful[seg.end] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.in[v]) {
      const GvfgEdge& edge = g.edges[e];
      if (edge.label.is_epsilon() && !useful[edge.src]) {
        useful[edge.src] = 1;
        stack.push_back(edge.src);
      }
    }
  }

  std::vector<IntraPath> out;
  std::vector<int> nodes{seg.start};
  std::vector<logic::Formula> guards;
  auto dfs = [&](auto& self, int v) -> void {
    if (v == seg.end && nodes.size() > 1) {
      out.push_back({nodes, logic::mk_and(guards)});
      return;
    }
    for (int e : g.out[v]) {
      const GvfgEdge& edge = g.edges[e];
      if (!edge.label.is_epsilon() || !useful[edge.dst]) continue;
      nodes.push_back(edge.dst);
      guards.push_back(edge.guard);
      self(self, edge.dst);
      guards.pop_back();
      nodes.pop_back();
    }
  };
  dfs(dfs, seg.start);
  return out;
}

logic::Formula segment_condition(const Gvfg& g, const Segment& seg, IntraCounters* counters) {
  std::vector<logic::Formula> alts;
  for (auto& p : enumerate_intra_paths(g, seg, counters)) alts.push_back(std::move(p.guard));
  return logic::mk_or(std::move(alts));
}

namespace {

logic::Formula path_condition_memo(const Vfsg& v, const SegmentPath& p, IntraCounters* counters,
                                   std::map<int, logic::Formula>& memo) {
  std::vector<logic::Formula> parts;
  for (int s : p.segments) {
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, segment_condition(*v.gvfg, v.segment(s), counters)).first;
    parts.push_back(it->second);
  }
  return logic::canonicalize(logic::mk_and(std::move(parts)));
}

}  // namespace

logic::Formula path_condition(const Vfsg& v, const SegmentPath& p, IntraCounters* counters) {
  std::map<int, logic::Formula> memo;
  return path_condition_memo(v, p, counters, memo);
}

PsiMap build_psi(const Vfsg& v, const std::vector<SegmentPath>& paths, ThreadPool& pool,
                 const CollectOptions& opts) {
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    int src = v.segment(p.segments.front()).start;
    int dst = v.segment(p.segments.back()).end;
    groups[{src, dst}].push_back(static_cast<int>(i));
  }
  std::vector<std::function<PsiEntry()>> tasks;
  for (const auto& [key, members] : groups)
    tasks.emplace_back([&v, &paths, &opts, key = key, &members = members] {
      std::map<int, logic::Formula> memo;  // this pair only
      std::vector<logic::Formula> alts;
      for (int i : members) alts.push_back(path_condition_memo(v, paths[i], opts.counters, memo));
      PsiEntry e;
      e.source = key.first;
      e.sink = key.second;
      e.condition = logic::canonicalize(logic::mk_or(std::move(alts)));
      e.verdict = logic::is_sat(e.condition, *v.gvfg->atoms, opts.budget);
      e.witnesses = members;
      return e;
    });
  PsiMap psi;
  for (auto& e : pool.submit_batch(std::move(tasks))) psi.emplace(std::pair{e.source, e.sink}, std::move(e));
  return psi;
}

}  // namespace vflow
