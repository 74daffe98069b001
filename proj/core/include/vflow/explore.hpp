#pragma once

// Realizable segment path search over the VFSG, one task per source segment.

#include "vflow/dyck.hpp"
#include "vflow/runtime.hpp"
#include "vflow/vfsg.hpp"

#include <atomic>
#include <iosfwd>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace vflow {

// Shared by the naive and segment engines so their results coincide.
struct Bounds {
  int context_depth = kDefaultContextDepth;
  int max_segments = 64;  // segments (function pieces) per path
};

struct SegmentPath {
  std::vector<int> segments;
  DyckState state;
  std::vector<EdgeLabel> labels;  // labels of the joining edges
  std::string realized;           // realized_string(labels)

  friend bool operator<(const SegmentPath& a, const SegmentPath& b) {
    return std::tie(a.segments, a.labels) < std::tie(b.segments, b.labels);
  }
};

// Insert-only memo of validated label strings; each distinct string is run
// through the recognizer once per analysis.
class RealizedStringCache {
 public:
  bool accepted(const std::string& key, const std::vector<EdgeLabel>& labels);
  size_t size() const;
  size_t checks() const { return checks_.load(); }

 private:
  mutable std::mutex mu_;
  std::set<std::string> accepted_;
  std::set<std::string> rejected_;
  std::atomic<size_t> checks_{0};
};

struct ExploreResult {
  std::vector<SegmentPath> paths;  // sorted
  bool depth_bound_hit = false;
  bool length_bound_hit = false;
  size_t memo_entries = 0;
  size_t recognizer_runs = 0;
};

ExploreResult explore(const Vfsg& v, const Bounds& bounds, ThreadPool& pool);

// `<segment ids> | <realized string>` per path.
void write_segment_paths(std::ostream& os, const ExploreResult& r);

}  // namespace vflow
