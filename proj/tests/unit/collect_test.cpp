#include "helpers.hpp"
#include "running_example.hpp"
#include "vflow/collect.hpp"

#include <gtest/gtest.h>

using namespace vflow;
using support::RunningExample;

TEST(Collect, IntraPathsOfBranchySegment) {
  RunningExample ex;
  const Gvfg& g = *ex.b.g;
  auto paths = enumerate_intra_paths(g, ex.v.segment(ex.l6));
  ASSERT_EQ(paths.size(), 2u);
  std::vector<logic::Formula> expect = {
      ex.formula(std::string(RunningExample::kPhi3) + " && " + RunningExample::kPhi4),
      ex.formula(std::string("!") + RunningExample::kPhi4)};
  int matched = 0;
  for (const auto& p : paths)
    for (const auto& e : expect)
      if (logic::equiv(p.guard, e, *g.atoms)) ++matched;
  EXPECT_EQ(matched, 2);
  for (const auto& p : paths) {
    EXPECT_EQ(p.nodes.front(), ex.v.segment(ex.l6).start);
    EXPECT_EQ(p.nodes.back(), ex.v.segment(ex.l6).end);
  }
}

TEST(Collect, StraightLineSegment) {
  RunningExample ex;
  auto paths = enumerate_intra_paths(*ex.b.g, ex.v.segment(ex.l5));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(logic::canonicalize(paths[0].guard).is_true());
  EXPECT_TRUE(logic::canonicalize(segment_condition(*ex.b.g, ex.v.segment(ex.l8))).is_true());
}

TEST(Collect, SegmentAndPathConditions) {
  RunningExample ex;
  const auto& atoms = *ex.b.g->atoms;
  using R = RunningExample;
  EXPECT_TRUE(logic::equiv(segment_condition(*ex.b.g, ex.v.segment(ex.l6)),
                           ex.formula(std::string("!") + R::kPhi4 + " || (" + R::kPhi3 + " && " + R::kPhi4 + ")"),
                           atoms));
  EXPECT_TRUE(logic::equiv(segment_condition(*ex.b.g, ex.v.segment(ex.l1)), ex.formula(R::kPhi1), atoms));

  ExploreResult r = explore(ex.v, Bounds{}, ex.pool);
  ASSERT_EQ(r.paths.size(), 2u);
  EXPECT_TRUE(logic::equiv(path_condition(ex.v, r.paths[0]),
                           ex.formula(std::string(R::kPhi1) + " && " + R::kPhi2), atoms));
  EXPECT_TRUE(logic::equiv(
      path_condition(ex.v, r.paths[1]),
      ex.formula(std::string("!") + R::kPhi1 + " && (!" + R::kPhi4 + " || (" + R::kPhi3 + " && " + R::kPhi4 + "))"),
      atoms));
}

TEST(Collect, PsiOfRunningExample) {
  RunningExample ex;
  ExploreResult r = explore(ex.v, Bounds{}, ex.pool);
  PsiMap psi = build_psi(ex.v, r.paths, ex.pool);
  ASSERT_EQ(psi.size(), 1u);
  const PsiEntry& e = psi.begin()->second;
  EXPECT_EQ(ex.b.g->nodes[e.source].value, "NULL");
  EXPECT_EQ(ex.b.g->nodes[e.sink].kind, NodeKind::DerefUse);
  EXPECT_EQ(e.verdict, logic::Verdict::Sat);
  EXPECT_TRUE(logic::equiv(e.condition, ex.formula(RunningExample::psi_text()), *ex.b.g->atoms));
  EXPECT_EQ(logic::canonicalize(e.condition), e.condition);
  EXPECT_EQ(e.witnesses, (std::vector<int>{0, 1}));
}

TEST(Collect, ContradictionIsUnsat) {
  auto b = support::build(support::read_fixture("contradiction.vf"));
  ThreadPool pool(1);
  Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
  ExploreResult r = explore(v, Bounds{}, pool);
  PsiMap psi = build_psi(v, r.paths, pool);
  ASSERT_EQ(psi.size(), 1u);
  EXPECT_EQ(psi.begin()->second.verdict, logic::Verdict::Unsat);
}

TEST(Collect, TwoSourcesTwoEntries) {
  auto b = support::build("f(c) { a = NULL; b = NULL; if (c > 0) { a = b; } u = *a; return c; }");
  ThreadPool pool(2);
  Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
  PsiMap psi = build_psi(v, explore(v, Bounds{}, pool).paths, pool);
  EXPECT_EQ(psi.size(), 2u);
}

TEST(Collect, OffPathSegmentsNeverExpanded) {
  auto b = support::build(support::read_fixture("pruning.vf"));
  ThreadPool pool(2);
  Vfsg v = build_vfsg(gen_all_segments(*b.g, pool), *b.g);
  ExploreResult r = explore(v, Bounds{}, pool);
  IntraCounters counters(v.segments.segments.size());
  build_psi(v, r.paths, pool, {logic::kDefaultBudget, &counters});
  std::set<int> on_path;
  for (const auto& p : r.paths) on_path.insert(p.segments.begin(), p.segments.end());
  for (const auto& s : v.segments.segments) {
    if (on_path.count(s.id))
      EXPECT_EQ(counters.count(s.id), 1) << "memoized once per pair";
    else
      EXPECT_EQ(counters.count(s.id), 0) << v.gvfg->node_key(s.start);
  }
}
