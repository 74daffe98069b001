#pragma once

// On-demand path-condition collection. Intra-function paths behind a segment
// are enumerated only once a realizable segment path through it is known, and
// are never stored in the segment itself.

#include "vflow/explore.hpp"
#include "vflow/logic.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace vflow {

struct IntraPath {
  std::vector<int> nodes;
  logic::Formula guard;  // conjunction of edge guards
};

// Per-segment invocation counters for enumerate_intra_paths.
class IntraCounters {
 public:
  explicit IntraCounters(size_t segments) : counts_(new std::atomic<long>[segments]()), n_(segments) {}
  void hit(int segment) { counts_[segment].fetch_add(1, std::memory_order_relaxed); }
  long count(int segment) const { return counts_[segment].load(); }
  size_t size() const { return n_; }

 private:
  std::unique_ptr<std::atomic<long>[]> counts_;
  size_t n_;
};

std::vector<IntraPath> enumerate_intra_paths(const Gvfg& g, const Segment& seg,
                                             IntraCounters* counters = nullptr);

// Disjunction of the intra path guards.
logic::Formula segment_condition(const Gvfg& g, const Segment& seg, IntraCounters* counters = nullptr);

// Canonical conjunction of the segment conditions along the path.
logic::Formula path_condition(const Vfsg& v, const SegmentPath& p, IntraCounters* counters = nullptr);

struct PsiEntry {
  int source = 0;  // GVFG node ids
  int sink = 0;
  logic::Formula condition;  // canonical
  logic::Verdict verdict = logic::Verdict::Sat;
  std::vector<int> witnesses;  // indices of the paths that produced the entry
};

// Keyed by (source, sink); only pairs with at least one path are present.
using PsiMap = std::map<std::pair<int, int>, PsiEntry>;

struct CollectOptions {
  logic::Budget budget = logic::kDefaultBudget;
  IntraCounters* counters = nullptr;
};

// One pool task per (source, sink) pair; segment conditions are memoized
// only within a task.
PsiMap build_psi(const Vfsg& v, const std::vector<SegmentPath>& paths, ThreadPool& pool,
                 const CollectOptions& opts = {});

}  // namespace vflow
