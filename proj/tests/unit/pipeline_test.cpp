#include "helpers.hpp"
#include "vflow/bench.hpp"
#include "vflow/generator.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace vflow;
using nlohmann::json;

namespace {

std::string report(const std::string& src, size_t threads, AnalyzeOptions opts = {}) {
  ThreadPool pool(threads);
  Analysis a = run_analysis(src, npd_spec(), opts, pool);
  return render_report(a, npd_spec(), opts);
}

}  // namespace

TEST(Pipeline, RunningExampleReport) {
  json j = json::parse(report(support::read_fixture("running_example.vf"), 2));
  EXPECT_EQ(j["client"], "npd");
  EXPECT_EQ(j["mode"], "segment");
  ASSERT_EQ(j["alarms"].size(), 1u);
  EXPECT_TRUE(j["suppressed"].empty());
  const json& a = j["alarms"][0];
  EXPECT_EQ(a["source"], (json{{"fn", "foo"}, {"line", 3}, {"value", "NULL"}}));
  EXPECT_EQ(a["sink"], (json{{"fn", "foo"}, {"line", 14}, {"value", "b"}}));
  EXPECT_EQ(a["verdict"], "sat");
  EXPECT_EQ(j["stats"]["segments"], 9);
  EXPECT_EQ(j["timing"], json::object());
}

TEST(Pipeline, ReportStableAcrossThreads) {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    std::string src = random_program(seed);
    std::string r1 = report(src, 1);
    for (size_t t : {2, 4, 8}) EXPECT_EQ(report(src, t), r1) << "seed " << seed << " threads " << t;
  }
}

TEST(Pipeline, NaiveAndSegmentAgree) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    std::string src = random_program(seed);
    ThreadPool pool(2);
    AnalyzeOptions naive;
    naive.mode = Mode::Naive;
    Analysis a = run_analysis(src, npd_spec(), {}, pool);
    Analysis b = run_analysis(src, npd_spec(), naive, pool);
    ASSERT_EQ(a.psi.size(), b.psi.size()) << seed;
    for (const auto& [key, e] : a.psi) {
      ASSERT_TRUE(b.psi.count(key)) << seed;
      // Same canonical form is not required; equivalence is.
      EXPECT_TRUE(logic::equiv_by_search(e.condition, b.psi.at(key).condition, *a.gvfg->atoms)) << seed;
    }
  }
}

TEST(Pipeline, ContradictionSuppressed) {
  ThreadPool pool(1);
  Analysis a = run_analysis(support::read_fixture("contradiction.vf"), npd_spec(), {}, pool);
  EXPECT_EQ(exit_code_for(a), 0);
  json j = json::parse(render_report(a, npd_spec(), {}));
  EXPECT_TRUE(j["alarms"].empty());
  ASSERT_EQ(j["suppressed"].size(), 1u);
  EXPECT_EQ(j["suppressed"][0]["verdict"], "unsat");
}

TEST(Pipeline, ZeroBudgetTimesOut) {
  AnalyzeOptions opts;
  opts.budget = logic::Budget{0};
  ThreadPool pool(2);
  Analysis a = run_analysis(support::read_fixture("running_example.vf"), npd_spec(), opts, pool);
  ASSERT_FALSE(a.psi.empty());
  for (const auto& [k, e] : a.psi) EXPECT_EQ(e.verdict, logic::Verdict::TimeoutAsUnsat);
  EXPECT_EQ(exit_code_for(a), 0);
  json j = json::parse(render_report(a, npd_spec(), opts));
  EXPECT_EQ(j["suppressed"][0]["verdict"], "timeout_unsat");
  bool noted = false;
  for (const auto& n : j["soundiness_notes"]) noted |= n.get<std::string>().find("budget") != std::string::npos;
  EXPECT_TRUE(noted);
}

TEST(Pipeline, LoopsAndRecursionNoted) {
  ThreadPool pool(1);
  Analysis a = run_analysis("f(x) { p = NULL; while (x > 0) { x = f(x); } u = *p; return x; }", npd_spec(), {},
                            pool);
  bool loop = false, rec = false;
  for (const auto& n : a.notes) {
    loop |= n.find("loop") != std::string::npos;
    rec |= n.find("recurs") != std::string::npos;
  }
  EXPECT_TRUE(loop);
  EXPECT_TRUE(rec);
  EXPECT_TRUE(std::is_sorted(a.notes.begin(), a.notes.end()));
}

TEST(Pipeline, TimingOnlyWhenAsked) {
  AnalyzeOptions opts;
  opts.timing = true;
  json j = json::parse(report(support::read_fixture("running_example.vf"), 1, opts));
  EXPECT_FALSE(j["timing"].empty());
}

TEST(Pipeline, BenchRows) {
  auto rows = bench(generate({Shape::Wide, 4, 1, 1}), npd_spec(), {1, 2}, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].threads, 1);
  EXPECT_DOUBLE_EQ(rows[0].speedup, 1.0);
  EXPECT_EQ(rows[1].worker_tasks.size(), 2u);
  EXPECT_NE(render_bench_table(rows).find("threads"), std::string::npos);
}

#ifdef VFLOW_CLI
namespace {
int run_cli(const std::string& args) {
  std::string cmd = std::string(VFLOW_CLI) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
std::string fixture(const char* name) { return std::string(VFLOW_FIXTURE_DIR) + "/" + name; }
}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("analyze " + fixture("running_example.vf")), 2);
  EXPECT_EQ(run_cli("analyze " + fixture("running_example.vf") + " --mode naive"), 2);
  EXPECT_EQ(run_cli("analyze " + fixture("contradiction.vf")), 0);
  EXPECT_EQ(run_cli("analyze " + fixture("running_example.vf") + " --budget-ms 0"), 0);
  EXPECT_EQ(run_cli("analyze /nonexistent.vf"), 1);
  EXPECT_EQ(run_cli("analyze " + fixture("taint.vf") + " --client taint --spec " + fixture("taint.spec")), 2);
  EXPECT_EQ(run_cli("analyze " + fixture("taint.vf") + " --client taint"), 1);
  EXPECT_EQ(run_cli("dump segments " + fixture("running_example.vf")), 0);
  EXPECT_EQ(run_cli("generate --shape wide -n 3"), 0);
  EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST(Cli, SyntaxErrorIsError) {
  auto path = std::filesystem::temp_directory_path() / "vflow_bad.vf";
  {
    std::ofstream(path) << "f( { return; }\n";
  }
  EXPECT_EQ(run_cli("analyze " + path.string()), 1);
  std::filesystem::remove(path);
}
#endif
