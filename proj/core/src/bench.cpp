#include "vflow/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vflow {

namespace {

// The sequential front half (parsing, SSA, points-to, GVFG) is common to
// every thread count and is left out of T_p.
constexpr const char* kEnginePhases[] = {"segments", "vfsg", "explore", "collect"};

double engine_ms(const Analysis& a) {
  double ms = 0;
  for (const char* p : kEnginePhases)
    if (auto it = a.timing_ms.find(p); it != a.timing_ms.end()) ms += it->second;
  return ms;
}

BenchRow measure(std::string_view source, const ClientSpec& client, int threads, int runs,
                 const AnalyzeOptions& opts) {
  ThreadPool pool(static_cast<size_t>(threads));
  BenchRow row;
  row.threads = threads;
  run_analysis(source, client, opts, pool);  // warm-up, untimed
  pool.reset_task_counts();
  for (int i = 0; i < runs; ++i) row.runs_ms.push_back(engine_ms(run_analysis(source, client, opts, pool)));
  row.worker_tasks = pool.task_counts();
  std::vector<double> sorted = row.runs_ms;
  std::sort(sorted.begin(), sorted.end());
  size_t m = sorted.size() / 2;
  row.median_ms = sorted.size() % 2 ? sorted[m] : (sorted[m - 1] + sorted[m]) / 2;
  return row;
}

}  // namespace

std::vector<BenchRow> bench(std::string_view source, const ClientSpec& client, const std::vector<int>& threads,
                            int runs, AnalyzeOptions opts) {
  if (runs < 1) throw std::invalid_argument("bench: runs must be >= 1");
  opts.mode = Mode::Segment;
  opts.timing = false;
  BenchRow base = measure(source, client, 1, runs, opts);
  std::vector<BenchRow> rows;
  for (int t : threads) {
    BenchRow r = t == 1 ? base : measure(source, client, t, runs, opts);
    r.speedup = r.median_ms > 0 ? base.median_ms / r.median_ms : 1.0;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "threads  median_ms  speedup  tasks_per_worker\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%7d  %9.2f  %7.2f  ", r.threads, r.median_ms, r.speedup);
    os << buf;
    for (size_t i = 0; i < r.worker_tasks.size(); ++i) os << (i ? "," : "") << r.worker_tasks[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace vflow
