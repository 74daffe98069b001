#pragma once

// Value-flow segment graph: segments as nodes, joined where a call or return
// edge of the GVFG leads from one segment's end to another's start.

#include "vflow/dyck.hpp"
#include "vflow/gvfg.hpp"
#include "vflow/segments.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace vflow {

struct VfsgEdge {
  int from = 0;  // segment ids
  int to = 0;
  EdgeLabel label;
};

struct Vfsg {
  const Gvfg* gvfg = nullptr;
  SegmentSet segments;
  std::vector<std::vector<VfsgEdge>> out;  // per segment, sorted by (to, label)
  std::vector<int> sources;                // segments starting at a Source node
  std::vector<int> sinks;                  // segments ending at a Sink node

  const Segment& segment(int id) const { return segments.segments.at(id); }
  bool is_source(int id) const;
  bool is_sink(int id) const;
  size_t edge_count() const;
};

// `g` must outlive the result.
Vfsg build_vfsg(SegmentSet segments, const Gvfg& g);

// Steps the label of the (lf, lg) edge from `s`. False if there is no such
// edge or the step rejects or exceeds the depth bound.
std::pair<bool, DyckState> concatenable(const Vfsg& v, int lf, int lg, const DyckState& s);

// Graphviz rendering: one node per segment, edges labeled "(k" / ")k".
void write_dot(std::ostream& os, const Vfsg& v);

}  // namespace vflow
