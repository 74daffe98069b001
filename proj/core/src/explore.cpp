#include "vflow/explore.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace vflow {

bool RealizedStringCache::accepted(const std::string& key, const std::vector<EdgeLabel>& labels) {
  {
    std::lock_guard lock(mu_);
    if (accepted_.count(key)) return true;
    if (rejected_.count(key)) return false;
  }
  ++checks_;
  bool ok = accepts(labels);
  std::lock_guard lock(mu_);
  (ok ? accepted_ : rejected_).insert(key);
  return ok;
}

size_t RealizedStringCache::size() const {
  std::lock_guard lock(mu_);
  return accepted_.size() + rejected_.size();
}

namespace {

struct Search {
  const Vfsg& v;
  const Bounds& bounds;
  RealizedStringCache& cache;

  std::vector<SegmentPath> found;
  bool depth_hit = false;
  bool length_hit = false;

  std::vector<int> path;
  std::vector<EdgeLabel> labels;
  std::vector<std::pair<int, DyckState>> visited;  // (segment, stack) on the current path

  void run(int source) {
    DyckState s(bounds.context_depth);
    visit(source, s);
  }

  void visit(int seg, const DyckState& s) {
    path.push_back(seg);
    visited.emplace_back(seg, s);
    if (v.is_sink(seg)) emit(s);
    if (static_cast<int>(path.size()) >= bounds.max_segments) {
      if (!v.out[seg].empty()) length_hit = true;
    } else {
      for (const auto& e : v.out[seg]) {
        DyckStep r = step(s, e.label);
        if (r.status == DyckStep::Status::DepthExceeded) depth_hit = true;
        if (!r.ok()) continue;
        if (std::find(visited.begin(), visited.end(), std::pair{e.to, r.state}) != visited.end())
          continue;
        labels.push_back(e.label);
        visit(e.to, r.state);
        labels.pop_back();
      }
    }
    visited.pop_back();
    path.pop_back();
  }

  void emit(const DyckState& s) {
    SegmentPath p{path, s, labels, realized_string(labels)};
    if (!cache.accepted(p.realized, labels)) return;
    found.push_back(std::move(p));
  }
};

}  // namespace

ExploreResult explore(const Vfsg& v, const Bounds& bounds, ThreadPool& pool) {
  RealizedStringCache cache;
  std::vector<std::function<Search()>> tasks;
  for (int src : v.sources)
    tasks.emplace_back([&, src] {
      Search s{v, bounds, cache, {}, false, false, {}, {}, {}};
      s.run(src);
      return s;
    });
  ExploreResult r;
  for (auto& s : pool.submit_batch(std::move(tasks))) {
    r.depth_bound_hit |= s.depth_hit;
    r.length_bound_hit |= s.length_hit;
    for (auto& p : s.found) r.paths.push_back(std::move(p));
  }
  std::sort(r.paths.begin(), r.paths.end());
  r.memo_entries = cache.size();
  r.recognizer_runs = cache.checks();
  return r;
}

void write_segment_paths(std::ostream& os, const ExploreResult& r) {
  for (const auto& p : r.paths) {
    for (size_t i = 0; i < p.segments.size(); ++i) os << (i ? " " : "") << "l" << p.segments[i];
    os << " | " << p.realized << '\n';
  }
}

}  // namespace vflow
