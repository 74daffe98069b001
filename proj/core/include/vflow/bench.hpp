#pragma once

// Self-speedup measurement: median wall time of the segment engine
// (segments, VFSG, exploration, collection; the frontend and GVFG build are
// excluded) per thread count, speedup S_p = T_1 / T_p.

#include "vflow/pipeline.hpp"

#include <string>
#include <vector>

namespace vflow {

struct BenchRow {
  int threads = 1;
  double median_ms = 0;
  double speedup = 1;
  std::vector<double> runs_ms;
  std::vector<size_t> worker_tasks;  // tasks per worker, summed over runs
};

inline constexpr int kDefaultBenchRuns = 5;

// T_1 is always measured, even when 1 is absent from `threads`.
std::vector<BenchRow> bench(std::string_view source, const ClientSpec& client, const std::vector<int>& threads,
                            int runs = kDefaultBenchRuns, AnalyzeOptions opts = {});

std::string render_bench_table(const std::vector<BenchRow>& rows);

}  // namespace vflow
