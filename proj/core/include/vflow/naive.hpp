#pragma once

// Baseline engine: depth-first enumeration of every realizable source-to-sink
// path directly on the GVFG. Exponential; used as the oracle for the segment
// engine and as the sequential reference.

#include "vflow/collect.hpp"
#include "vflow/explore.hpp"
#include "vflow/gvfg.hpp"

#include <string>
#include <vector>

namespace vflow {

struct ValuePath {
  std::vector<int> nodes;
  std::vector<EdgeLabel> labels;  // non-epsilon labels in order
  std::string realized;
  logic::Formula guard;  // conjunction of edge guards
};

struct NaiveResult {
  std::vector<ValuePath> paths;
  bool depth_bound_hit = false;
  bool length_bound_hit = false;
};

// Paths start at a Source and end at a Sink with at least one edge. The path
// is cut into per-function pieces at call/return edges; `bounds` limit the
// call depth and the piece count, and a piece (start, end, call stack) may not
// repeat within one path -- the same restrictions explore() applies to
// segments.
NaiveResult enumerate_realizable_paths(const Gvfg& g, const Bounds& bounds);

PsiMap collect_psi_naive(const Gvfg& g, const std::vector<ValuePath>& paths,
                         logic::Budget budget = logic::kDefaultBudget);

}  // namespace vflow
