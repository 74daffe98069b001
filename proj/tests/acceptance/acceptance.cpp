// Acceptance checks, one pass/fail line per criterion.
//
//   vflow_acceptance [--criterion N]

#include "helpers.hpp"
#include "oracles.hpp"
#include "vflow/bench.hpp"
#include "vflow/generator.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace vflow;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const logic::Formula& cond(const PsiMap& m, const std::pair<int, int>& k) { return m.at(k).condition; }

bool same_condition(const logic::Formula& a, const logic::Formula& b, const logic::AtomTable& t) {
  std::vector<int> atoms = logic::atoms_of(a);
  for (int x : logic::atoms_of(b)) atoms.push_back(x);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms.size() <= logic::kMaxEquivAtoms ? logic::equiv(a, b, t) : logic::equiv_by_search(a, b, t);
}

// Golden running example: one satisfiable NULL -> *b entry with the expected
// condition, two segment paths, under a second.
Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  ThreadPool pool(2);
  Analysis a = run_analysis(support::read_fixture("running_example.vf"), npd_spec(), {}, pool);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (a.psi.size() != 1) return {false, "expected 1 entry, got " + std::to_string(a.psi.size())};
  const Gvfg& g = *a.gvfg;
  const PsiEntry& e = a.psi.begin()->second;
  auto expected = logic::parse_formula(
      "((foo:x.1 > foo:y.1) && (bar:m.1 > 0)) || (!(foo:x.1 > foo:y.1) && (!(bar:n.1 > 0) || "
      "((bar:m.1 < bar:n.1) && (bar:n.1 > 0))))",
      *g.atoms);
  std::ostringstream paths;
  write_segment_paths(paths, a.explored);
  bool ok = g.nodes[e.source].value == "NULL" && g.nodes[e.sink].value == "b.1" &&
            e.verdict == logic::Verdict::Sat && same_condition(e.condition, expected, *g.atoms) &&
            a.vfsg->segments.segments.size() == 9 && paths.str() == "l0 l6 l3 | (1 )1\nl1 l7 l3 | (1 )1\n" &&
            exit_code_for(a) == 2 && ms < 1000;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu segments, %zu paths, verdict %s, %.1f ms",
                a.vfsg->segments.segments.size(), a.explored.paths.size(),
                std::string(logic::to_string(e.verdict)).c_str(), ms);
  return {ok, buf};
}

// Differential: naive and segment engines agree on 500 random programs.
Outcome criterion2() {
  ThreadPool pool(std::max<size_t>(2, resolve_thread_count()));
  int programs = 0, entries = 0, bad = 0;
  std::string first_bad;
  for (uint64_t seed = 1; seed <= 500; ++seed) {
    RandomOptions ro;
    ro.recursion = seed % 5 == 0;
    std::string src = random_program(seed, ro);
    // Both engines enumerate exponentially many paths through recursive
    // cycles; tighter (shared) bounds keep every program under a second.
    AnalyzeOptions seg;
    if (ro.recursion) seg.bounds = Bounds{6, 24};
    AnalyzeOptions naive = seg;
    naive.mode = Mode::Naive;
    Analysis s = run_analysis(src, npd_spec(), seg, pool);
    Analysis n = run_analysis(src, npd_spec(), naive, pool);
    ++programs;
    bool ok = s.psi.size() == n.psi.size();
    for (const auto& [key, e] : s.psi) {
      if (!ok) break;
      ++entries;
      ok = n.psi.count(key) && same_condition(e.condition, cond(n.psi, key), *s.gvfg->atoms);
    }
    if (!ok && bad++ == 0) first_bad = "seed " + std::to_string(seed);
  }
  return {bad == 0, std::to_string(programs) + " programs, " + std::to_string(entries) + " entries, " +
                        std::to_string(bad) + " mismatches" + (bad ? " (first: " + first_bad + ")" : "")};
}

// Determinism: reports are byte-identical for 1, 2, 4 and 8 threads.
Outcome criterion3() {
  int bad = 0;
  std::string first_bad;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    std::string src = random_program(1000 + seed);
    std::string base;
    for (size_t t : {1, 2, 4, 8}) {
      ThreadPool pool(t);
      AnalyzeOptions opts;
      std::string r = render_report(run_analysis(src, npd_spec(), opts, pool), npd_spec(), opts);
      if (t == 1)
        base = r;
      else if (r != base && bad++ == 0)
        first_bad = "seed " + std::to_string(1000 + seed) + " threads " + std::to_string(t);
    }
  }
  return {bad == 0, "50 programs x {1,2,4,8} threads, " + std::to_string(bad) + " differing reports" +
                        (bad ? " (first: " + first_bad + ")" : "")};
}

// Recognizer agrees with the grammar on every string of length <= 8 over
// three call sites.
Outcome criterion4() {
  std::vector<EdgeLabel> alphabet;
  for (int k = 1; k <= 3; ++k) {
    alphabet.push_back(EdgeLabel::open(k));
    alphabet.push_back(EdgeLabel::close(k));
  }
  long checked = 0, bad = 0, accepted = 0;
  std::vector<EdgeLabel> w;
  std::function<void()> rec = [&] {
    bool a = accepts(w);
    ++checked;
    accepted += a;
    if (a != oracle::grammar_accepts(w)) ++bad;
    if (w.size() == 8) return;
    for (const auto& l : alphabet) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
  return {bad == 0, std::to_string(checked) + " strings, " + std::to_string(accepted) + " accepted, " +
                        std::to_string(bad) + " disagreements"};
}

// Pruning: segments off every realizable segment path are never expanded
// into intra-function paths.
Outcome criterion5() {
  ThreadPool pool(2);
  Analysis a = run_analysis(support::read_fixture("pruning.vf"), npd_spec(), {}, pool);
  const Gvfg& g = *a.gvfg;
  std::set<int> on_path;
  for (const auto& p : a.explored.paths) on_path.insert(p.segments.begin(), p.segments.end());
  int off = 0, off_expanded = 0, d_segment = -1;
  for (const auto& s : a.vfsg->segments.segments) {
    if (g.nodes[s.start].value == "d.1" && g.nodes[s.end].value == "d.1") d_segment = s.id;
    if (on_path.count(s.id)) continue;
    ++off;
    off_expanded += a.counters->count(s.id) != 0;
  }
  bool ok = d_segment >= 0 && !on_path.count(d_segment) && a.counters->count(d_segment) == 0 && off_expanded == 0 &&
            a.psi.size() == 1;
  return {ok, std::to_string(off) + " off-path segments, " + std::to_string(off_expanded) +
                  " expanded; d -> *d expanded " + std::to_string(d_segment >= 0 ? a.counters->count(d_segment) : -1) +
                  " times"};
}

// Self-speedup: wide programs scale, chains neither gain nor lose much.
Outcome criterion6() {
  auto rows_w = bench(generate({Shape::Wide, 256, 4, 1}), npd_spec(), {1, 4}, kDefaultBenchRuns);
  auto rows_c = bench(generate({Shape::Chain, 64, 4, 1}), npd_spec(), {1, 4}, kDefaultBenchRuns);
  double sw = rows_w.back().speedup, sc = rows_c.back().speedup;
  bool ok = sw >= 2.0 && sc >= 0.8 && sc <= 2.0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "wide-256 T1/T4 = %.2f (>= 2.0), chain-64 T1/T4 = %.2f (in [0.8, 2.0]), %u hw threads",
                sw, sc, std::thread::hardware_concurrency());
  return {ok, buf};
}

// Contradictory guards are suppressed; a zero budget suppresses everything
// as timed out.
Outcome criterion7() {
  ThreadPool pool(2);
  Analysis c = run_analysis(support::read_fixture("contradiction.vf"), npd_spec(), {}, pool);
  bool unsat = c.psi.size() == 1 && c.psi.begin()->second.verdict == logic::Verdict::Unsat && exit_code_for(c) == 0;
  AnalyzeOptions zero;
  zero.budget = logic::Budget{0};
  Analysis z = run_analysis(support::read_fixture("running_example.vf"), npd_spec(), zero, pool);
  bool all_timeout = !z.psi.empty();
  for (const auto& [k, e] : z.psi) all_timeout &= e.verdict == logic::Verdict::TimeoutAsUnsat;
  all_timeout &= exit_code_for(z) == 0;
  return {unsat && all_timeout, std::string("contradiction ") + (unsat ? "unsat, exit 0" : "not suppressed") +
                                    "; budget 0 " + (all_timeout ? "all timeout_unsat" : "left a verdict")};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"running example golden output", criterion1},
    {"naive and segment engines agree", criterion2},
    {"thread-count determinism", criterion3},
    {"recognizer matches grammar", criterion4},
    {"off-path segments not expanded", criterion5},
    {"self-speedup", criterion6},
    {"infeasible and timed-out conditions suppressed", criterion7},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::cerr << "no criterion " << only << "\n";
    return 1;
  }
  bool all = true;
  for (size_t i = 0; i < kCriteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = kCriteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << " [" << (o.pass ? "PASS" : "FAIL") << "] " << kCriteria[i].first << ": "
              << o.detail << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}
