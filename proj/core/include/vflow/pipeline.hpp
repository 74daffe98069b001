#pragma once

// End-to-end analysis: source text -> GVFG -> (segments, VFSG, exploration,
// on-demand collection) or naive enumeration -> report.

#include "vflow/clients.hpp"
#include "vflow/collect.hpp"
#include "vflow/explore.hpp"
#include "vflow/frontend.hpp"
#include "vflow/gvfg.hpp"
#include "vflow/naive.hpp"
#include "vflow/runtime.hpp"
#include "vflow/vfsg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vflow {

enum class Mode { Naive, Segment };
std::string_view to_string(Mode m);

struct AnalyzeOptions {
  Mode mode = Mode::Segment;
  int unroll = kDefaultUnroll;
  logic::Budget budget = logic::kDefaultBudget;
  Bounds bounds;
  bool timing = false;  // include wall-clock phases in the report
};

struct Analysis {
  Frontend frontend;
  std::unique_ptr<Gvfg> gvfg;
  // Segment mode.
  std::optional<Vfsg> vfsg;
  ExploreResult explored;
  std::unique_ptr<IntraCounters> counters;
  // Naive mode.
  NaiveResult naive;

  PsiMap psi;
  std::vector<std::string> notes;  // soundiness notes, sorted
  std::map<std::string, double> timing_ms;

  size_t alarm_count() const;  // satisfiable entries
};

// Throws FrontendError on bad input.
Analysis run_analysis(std::string_view source, const ClientSpec& client, const AnalyzeOptions& opts,
                      ThreadPool& pool);

// Front half only: parsed, guarded and marked GVFG.
std::unique_ptr<Gvfg> build_marked_gvfg(const Frontend& fe, const ClientSpec& client);

// JSON report with sorted keys; byte-stable for a fixed input unless timing
// is requested.
std::string render_report(const Analysis& a, const ClientSpec& client, const AnalyzeOptions& opts);

// 0 = ran clean, 2 = alarms found.
inline int exit_code_for(const Analysis& a) { return a.alarm_count() ? 2 : 0; }

// "foo:a@3", using the base variable name and the source line.
std::string describe_node(const Gvfg& g, int node);

}  // namespace vflow
