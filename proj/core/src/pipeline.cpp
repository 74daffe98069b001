#include "vflow/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>

namespace vflow {

std::string_view to_string(Mode m) { return m == Mode::Naive ? "naive" : "segment"; }

size_t Analysis::alarm_count() const {
  return static_cast<size_t>(std::count_if(psi.begin(), psi.end(), [](const auto& kv) {
    return kv.second.verdict == logic::Verdict::Sat;
  }));
}

namespace {

bool has_loop(const Block& b) {
  return std::any_of(b.begin(), b.end(), [](const Stmt& s) {
    if (std::holds_alternative<While>(s.node)) return true;
    if (const auto* i = std::get_if<If>(&s.node)) return has_loop(i->then_body) || has_loop(i->else_body);
    return false;
  });
}

class Stopwatch {
 public:
  explicit Stopwatch(std::map<std::string, double>& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& phase, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(phase, t0);
    } else {
      auto r = f();
      record(phase, t0);
      return r;
    }
  }

 private:
  void record(const std::string& phase, std::chrono::steady_clock::time_point t0) {
    sink_[phase] += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  std::map<std::string, double>& sink_;
};

}  // namespace

std::unique_ptr<Gvfg> build_marked_gvfg(const Frontend& fe, const ClientSpec& client) {
  auto g = std::make_unique<Gvfg>(build_gvfg(fe.program, fe.call_graph));
  attach_guards(*g, fe.program);
  mark_sources_sinks(*g, client);
  return g;
}

Analysis run_analysis(std::string_view source, const ClientSpec& client, const AnalyzeOptions& opts,
                      ThreadPool& pool) {
  Analysis a;
  Stopwatch sw(a.timing_ms);
  auto t0 = std::chrono::steady_clock::now();

  sw.time("frontend", [&] {
    Program prog = parse(source);
    bool loops = std::any_of(prog.functions.begin(), prog.functions.end(),
                             [](const Function& f) { return has_loop(f.body); });
    if (loops)
      a.notes.push_back("loops unrolled " + std::to_string(opts.unroll) + " time(s); later iterations ignored");
    a.frontend.program = resolve_pointers(to_ssa(unroll_loops(prog, opts.unroll)));
    a.frontend.call_graph = build_call_graph(a.frontend.program);
  });
  sw.time("gvfg", [&] { a.gvfg = build_marked_gvfg(a.frontend, client); });
  for (const auto& n : a.gvfg->notes) a.notes.push_back(n);
  const Gvfg& g = *a.gvfg;

  bool depth_hit = false, length_hit = false;
  if (opts.mode == Mode::Segment) {
    SegmentSet segs = sw.time("segments", [&] { return gen_all_segments(g, pool); });
    sw.time("vfsg", [&] { a.vfsg.emplace(build_vfsg(std::move(segs), g)); });
    sw.time("explore", [&] { a.explored = explore(*a.vfsg, opts.bounds, pool); });
    a.counters = std::make_unique<IntraCounters>(a.vfsg->segments.segments.size());
    sw.time("collect", [&] {
      a.psi = build_psi(*a.vfsg, a.explored.paths, pool, {opts.budget, a.counters.get()});
    });
    depth_hit = a.explored.depth_bound_hit;
    length_hit = a.explored.length_bound_hit;
  } else {
    sw.time("naive", [&] { a.naive = enumerate_realizable_paths(g, opts.bounds); });
    sw.time("collect", [&] { a.psi = collect_psi_naive(g, a.naive.paths, opts.budget); });
    depth_hit = a.naive.depth_bound_hit;
    length_hit = a.naive.length_bound_hit;
  }
  if (depth_hit)
    a.notes.push_back("call depth bound " + std::to_string(opts.bounds.context_depth) + " reached; deeper paths dropped");
  if (length_hit)
    a.notes.push_back("path length bound " + std::to_string(opts.bounds.max_segments) +
                      " segments reached; longer paths dropped");
  size_t timeouts = std::count_if(a.psi.begin(), a.psi.end(), [](const auto& kv) {
    return kv.second.verdict == logic::Verdict::TimeoutAsUnsat;
  });
  if (timeouts)
    a.notes.push_back(std::to_string(timeouts) + " condition(s) exceeded the solver budget; treated as unsat");
  std::sort(a.notes.begin(), a.notes.end());
  a.notes.erase(std::unique(a.notes.begin(), a.notes.end()), a.notes.end());
  a.timing_ms["total"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return a;
}

std::string describe_node(const Gvfg& g, int node) {
  const ValueNode& n = g.nodes[node];
  std::string value = n.kind == NodeKind::Literal ? n.value : base_name(n.value);
  return g.functions[n.function] + ":" + value + "@" + std::to_string(n.line);
}

namespace {

using nlohmann::json;

json node_json(const Gvfg& g, int node) {
  const ValueNode& n = g.nodes[node];
  return {{"fn", g.functions[n.function]},
          {"value", n.kind == NodeKind::Literal ? n.value : base_name(n.value)},
          {"line", n.line}};
}

std::string join_path(const Gvfg& g, const std::vector<int>& nodes) {
  std::string s;
  for (int v : nodes) {
    if (!s.empty()) s += " -> ";
    s += describe_node(g, v);
  }
  return s;
}

constexpr size_t kSampledPaths = 3;

json entry_json(const Analysis& a, const PsiEntry& e) {
  const Gvfg& g = *a.gvfg;
  json j;
  j["source"] = node_json(g, e.source);
  j["sink"] = node_json(g, e.sink);
  j["condition"] = logic::render(e.condition, *g.atoms);
  j["verdict"] = std::string(logic::to_string(e.verdict));
  json seg_paths = json::array();
  json sampled = json::array();
  if (a.vfsg) {
    for (int w : e.witnesses) {
      const SegmentPath& p = a.explored.paths[w];
      seg_paths.push_back(p.segments);
      if (sampled.size() >= kSampledPaths) continue;
      // One concrete value path: the first intra path of every segment.
      std::vector<int> nodes;
      for (int s : p.segments) {
        auto intra = enumerate_intra_paths(g, a.vfsg->segment(s));
        if (intra.empty()) break;
        nodes.insert(nodes.end(), intra.front().nodes.begin(), intra.front().nodes.end());
      }
      sampled.push_back(join_path(g, nodes));
    }
  } else {
    for (int w : e.witnesses) {
      if (sampled.size() >= kSampledPaths) break;
      sampled.push_back(join_path(g, a.naive.paths[w].nodes));
    }
  }
  j["segment_paths"] = std::move(seg_paths);
  j["value_paths_sampled"] = std::move(sampled);
  return j;
}

}  // namespace

std::string render_report(const Analysis& a, const ClientSpec& client, const AnalyzeOptions& opts) {
  json r;
  r["client"] = client.name;
  r["mode"] = std::string(to_string(opts.mode));
  json alarms = json::array(), suppressed = json::array();
  for (const auto& [key, e] : a.psi)
    (e.verdict == logic::Verdict::Sat ? alarms : suppressed).push_back(entry_json(a, e));
  r["alarms"] = std::move(alarms);
  r["suppressed"] = std::move(suppressed);
  r["soundiness_notes"] = a.notes;
  json stats;
  stats["gvfg_nodes"] = a.gvfg->nodes.size();
  stats["gvfg_edges"] = a.gvfg->edges.size();
  stats["psi_entries"] = a.psi.size();
  if (a.vfsg) {
    stats["segments"] = a.vfsg->segments.segments.size();
    stats["vfsg_edges"] = a.vfsg->edge_count();
    stats["segment_paths"] = a.explored.paths.size();
  } else {
    stats["value_paths"] = a.naive.paths.size();
  }
  r["stats"] = std::move(stats);
  json timing = json::object();
  if (opts.timing)
    for (const auto& [phase, ms] : a.timing_ms) timing[phase] = ms;
  r["timing"] = std::move(timing);
  return r.dump(2) + "\n";
}

}  // namespace vflow
