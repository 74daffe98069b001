#include "vflow/naive.hpp"

#include <algorithm>
#include <tuple>

namespace vflow {

namespace {

struct Walk {
  const Gvfg& g;
  const Bounds& bounds;
  NaiveResult& result;

  std::vector<int> nodes;
  std::vector<EdgeLabel> labels;
  std::vector<logic::Formula> guards;
  std::vector<std::tuple<int, int, DyckState>> pieces;  // finished pieces
  int piece_start = 0;

  bool piece_seen(int end, const DyckState& s) const {
    return std::find(pieces.begin(), pieces.end(), std::tuple{piece_start, end, s}) != pieces.end();
  }

  void visit(int v, const DyckState& s) {
    const ValueNode& n = g.nodes[v];
    if (n.has(kSink) && v != piece_start && !piece_seen(v, s) && accepts(labels))
      result.paths.push_back({nodes, labels, realized_string(labels), logic::mk_and(guards)});
    for (int e : g.out[v]) {
      const GvfgEdge& edge = g.edges[e];
      if (edge.label.is_epsilon()) {
        advance(edge, s);
        continue;
      }
      // Crossing a call/return edge ends the current piece.
      if (piece_seen(v, s)) continue;
      if (static_cast<int>(pieces.size()) + 1 >= bounds.max_segments) {
        result.length_bound_hit = true;
        continue;
      }
      DyckStep r = step(s, edge.label);
      if (r.status == DyckStep::Status::DepthExceeded) result.depth_bound_hit = true;
      if (!r.ok()) continue;
      pieces.emplace_back(piece_start, v, s);
      int saved = piece_start;
      piece_start = edge.dst;
      labels.push_back(edge.label);
      advance(edge, r.state);
      labels.pop_back();
      piece_start = saved;
      pieces.pop_back();
    }
  }

  void advance(const GvfgEdge& edge, const DyckState& s) {
    nodes.push_back(edge.dst);
    guards.push_back(edge.guard);
    visit(edge.dst, s);
    guards.pop_back();
    nodes.pop_back();
  }
};

}  // namespace

NaiveResult enumerate_realizable_paths(const Gvfg& g, const Bounds& bounds) {
  NaiveResult result;
  for (const auto& n : g.nodes) {
    if (!n.has(kSource)) continue;
    Walk w{g, bounds, result, {n.id}, {}, {}, {}, n.id};
    w.visit(n.id, DyckState(bounds.context_depth));
  }
  return result;
}

PsiMap collect_psi_naive(const Gvfg& g, const std::vector<ValuePath>& paths, logic::Budget budget) {
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (size_t i = 0; i < paths.size(); ++i)
    groups[{paths[i].nodes.front(), paths[i].nodes.back()}].push_back(static_cast<int>(i));
  PsiMap psi;
  for (const auto& [key, members] : groups) {
    std::vector<logic::Formula> alts;
    for (int i : members) alts.push_back(paths[i].guard);
    PsiEntry e;
    e.source = key.first;
    e.sink = key.second;
    e.condition = logic::canonicalize(logic::mk_or(std::move(alts)));
    e.verdict = logic::is_sat(e.condition, *g.atoms, budget);
    e.witnesses = members;
    psi.emplace(key, std::move(e));
  }
  return psi;
}

}  // namespace vflow
