#include "vflow/runtime.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <numeric>

using namespace vflow;

TEST(ThreadPool, RejectsZeroWorkers) { EXPECT_THROW(ThreadPool(0), std::invalid_argument); }

TEST(ThreadPool, EveryTaskRunsOnce) {
  ThreadPool pool(4);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::atomic<int>> hits(100);
    std::vector<std::function<void()>> tasks;
    for (size_t i = 0; i < hits.size(); ++i) tasks.emplace_back([&hits, i] { hits[i]++; });
    pool.run_batch(std::move(tasks));
    for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
  }
}

TEST(ThreadPool, ResultsInSubmissionOrder) {
  ThreadPool pool(3);
  std::vector<std::function<int()>> tasks;
  for (int i = 0; i < 50; ++i) tasks.emplace_back([i] { return i * i; });
  auto out = pool.submit_batch(std::move(tasks));
  ASSERT_EQ(out.size(), 50u);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(out[i], i * i);
  EXPECT_TRUE(pool.submit_batch(std::vector<std::function<int()>>{}).empty());
}

TEST(ThreadPool, BatchSize) {
  ThreadPool pool(4);
  EXPECT_EQ(pool.batch_size_for(10), 3u);
  EXPECT_EQ(pool.batch_size_for(8), 2u);
  EXPECT_EQ(pool.batch_size_for(1), 1u);
}

TEST(ThreadPool, IdleWorkersStealFromSlowBatch) {
  ThreadPool pool(4);
  pool.reset_task_counts();
  // The first worker's contiguous batch is slow; the others finish their
  // cheap batches and must help.
  std::vector<std::function<void()>> tasks;
  for (int i = 0; i < 64; ++i)
    tasks.emplace_back([i] {
      if (i < 16) std::this_thread::sleep_for(std::chrono::milliseconds(5));
    });
  pool.run_batch(std::move(tasks));
  auto counts = pool.task_counts();
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), size_t{0}), 64u);
  for (size_t c : counts) EXPECT_GE(c, 1u);
}

TEST(ThreadPool, ErrorsSurfaceAfterDrain) {
  ThreadPool pool(2);
  std::atomic<int> ran{0};
  std::vector<std::function<void()>> tasks;
  for (int i = 0; i < 20; ++i)
    tasks.emplace_back([&ran, i] {
      ran++;
      if (i % 7 == 3) throw std::runtime_error("boom");
    });
  try {
    pool.run_batch(std::move(tasks));
    FAIL() << "expected PoolError";
  } catch (const PoolError& e) {
    EXPECT_EQ(e.errors().size(), 3u);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
  EXPECT_EQ(ran.load(), 20);
  // Still usable.
  std::atomic<int> after{0};
  pool.run_batch({[&] { after++; }});
  EXPECT_EQ(after.load(), 1);
}

TEST(ThreadPool, ResolveThreadCount) {
  EXPECT_EQ(resolve_thread_count(3), 3u);
  EXPECT_THROW(resolve_thread_count(0), std::invalid_argument);
  ::setenv("VFLOW_THREADS", "5", 1);
  EXPECT_EQ(resolve_thread_count(), 5u);
  EXPECT_EQ(resolve_thread_count(2), 2u);
  ::setenv("VFLOW_THREADS", "junk", 1);
  EXPECT_GE(resolve_thread_count(), 1u);
  ::unsetenv("VFLOW_THREADS");
  EXPECT_GE(resolve_thread_count(), 1u);
}
