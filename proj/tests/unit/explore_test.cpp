#include "helpers.hpp"
#include "running_example.hpp"
#include "vflow/explore.hpp"
#include "vflow/generator.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace vflow;
using support::RunningExample;

TEST(Explore, RunningExampleFindsTwoPaths) {
  RunningExample ex;
  ExploreResult r = explore(ex.v, Bounds{}, ex.pool);
  ASSERT_EQ(r.paths.size(), 2u);
  EXPECT_EQ(r.paths[0].segments, (std::vector<int>{ex.l1, ex.l4, ex.l8}));
  EXPECT_EQ(r.paths[1].segments, (std::vector<int>{ex.l2, ex.l6, ex.l8}));
  for (const auto& p : r.paths) {
    EXPECT_TRUE(accepts(p.labels));
    EXPECT_EQ(p.realized, "(1 )1");
    EXPECT_EQ(p.state.depth(), 0);
  }
  // Both paths share one realized string: the recognizer ran once.
  EXPECT_EQ(r.memo_entries, 1u);
  EXPECT_EQ(r.recognizer_runs, 1u);
  std::ostringstream os;
  write_segment_paths(os, r);
  EXPECT_EQ(os.str(), "l0 l6 l3 | (1 )1\nl1 l7 l3 | (1 )1\n");
}

TEST(Explore, UnrealizableContinuationDropped) {
  auto b = support::build(support::read_fixture("pruning.vf"));
  ThreadPool pool(2);
  Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
  ExploreResult r = explore(v, Bounds{}, pool);
  ASSERT_EQ(r.paths.size(), 1u);
  EXPECT_EQ(r.paths[0].realized, "(1 )1");
}

TEST(Explore, UnreachableSink) {
  auto b = support::build(
      "f() { a = NULL; r = g(a); return r; }\n"
      "g(x) { return x; }\n"
      "h(y) { u = *y; return y; }\n");
  ThreadPool pool(1);
  Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
  EXPECT_FALSE(v.sinks.empty());
  EXPECT_TRUE(explore(v, Bounds{}, pool).paths.empty());
}

TEST(Explore, StringCache) {
  RealizedStringCache c;
  std::vector<EdgeLabel> ok{EdgeLabel::open(4), EdgeLabel::close(4)};
  std::vector<EdgeLabel> bad{EdgeLabel::open(3), EdgeLabel::close(4)};
  EXPECT_TRUE(c.accepted("(4 )4", ok));
  EXPECT_TRUE(c.accepted("(4 )4", ok));
  EXPECT_EQ(c.checks(), 1u);
  EXPECT_TRUE(c.accepted("", {}));
  EXPECT_FALSE(c.accepted("(3 )4", bad));
  EXPECT_EQ(c.size(), 3u);
}

TEST(Explore, ThreadCountInvariant) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto b = support::build(random_program(seed));
    std::vector<std::vector<std::vector<int>>> results;
    for (size_t t : {1, 2, 4, 8}) {
      ThreadPool pool(t);
      Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
      ExploreResult r = explore(v, Bounds{}, pool);
      std::vector<std::vector<int>> segs;
      for (const auto& p : r.paths) {
        EXPECT_TRUE(accepts(p.labels));
        segs.push_back(p.segments);
      }
      results.push_back(segs);
    }
    for (const auto& r : results) EXPECT_EQ(r, results[0]) << "seed " << seed;
  }
}

TEST(Explore, RecursionTerminatesUnderBounds) {
  const char* src =
      "main() {\n"
      "  n = NULL;\n"
      "  r = f(n);\n"
      "  return r;\n"
      "}\n"
      "f(a) {\n"
      "  u = *a;\n"
      "  b = g(a);\n"
      "  return b;\n"
      "}\n"
      "g(x) {\n"
      "  y = f(x);\n"
      "  return y;\n"
      "}\n";
  auto b = support::build(src);
  ThreadPool pool(2);
  Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
  Bounds small{3, 8};
  ExploreResult r = explore(v, small, pool);
  EXPECT_FALSE(r.paths.empty());
  EXPECT_TRUE(r.depth_bound_hit || r.length_bound_hit);
  NaiveResult n = enumerate_realizable_paths(*b.g, small);
  EXPECT_EQ(support::expanded_segment_paths(v, r), support::naive_node_paths(n));
}
