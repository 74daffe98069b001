#pragma once

// Value-flow segments: intra-function reachability shortcuts from a source,
// formal parameter or call receiver to a sink, formal return or call argument.

#include "vflow/gvfg.hpp"
#include "vflow/runtime.hpp"

#include <iosfwd>
#include <vector>

namespace vflow {

inline constexpr uint8_t kSegmentStart = kSource | kFormalParam | kActualRet;
inline constexpr uint8_t kSegmentEnd = kSink | kFormalRet | kActualParam;

struct Segment {
  int id = -1;  // index in SegmentSet::segments
  int function = 0;
  int start = 0;  // node ids
  int end = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentSet {
  // Sorted by (function, start, end); ids follow this order.
  std::vector<Segment> segments;
  std::vector<std::vector<int>> by_function;
};

// Segments of one function, sorted by (start, end), ids unset. Reachability
// only: no intra path is enumerated.
std::vector<Segment> gen_segments(const Gvfg& g, int function);

// One pool task per function.
SegmentSet gen_all_segments(const Gvfg& g, ThreadPool& pool);

// `segment <fn> <start> <end>` lines, sorted lexicographically.
void write_segments(std::ostream& os, const Gvfg& g, const SegmentSet& s);

}  // namespace vflow
