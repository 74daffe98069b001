#pragma once

// Batch-submitting work-stealing pool.
//
// A submission of n tasks on w workers is cut into w contiguous batches of
// ceil(n / w) tasks, one per worker deque. Owners pop from the front; an idle
// worker steals the back half of the fullest other deque. Workers persist
// across submissions.

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace vflow {

class PoolError : public std::runtime_error {
 public:
  PoolError(const std::string& what, std::vector<std::exception_ptr> errors)
      : std::runtime_error(what), errors_(std::move(errors)) {}
  const std::vector<std::exception_ptr>& errors() const { return errors_; }

 private:
  std::vector<std::exception_ptr> errors_;
};

class ThreadPool {
 public:
  // Throws std::invalid_argument for zero workers.
  explicit ThreadPool(size_t workers);
  ~ThreadPool();
  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  size_t size() const { return workers_.size(); }
  size_t batch_size_for(size_t tasks) const { return (tasks + size() - 1) / size(); }

  // Runs every task exactly once and blocks until all are done. If any task
  // throws, the rest still run and a PoolError is raised afterwards.
  void run_batch(std::vector<std::function<void()>> tasks);

  // Results in submission order.
  template <class R>
  std::vector<R> submit_batch(std::vector<std::function<R()>> tasks) {
    std::vector<std::optional<R>> slots(tasks.size());
    std::vector<std::function<void()>> wrapped;
    wrapped.reserve(tasks.size());
    for (size_t i = 0; i < tasks.size(); ++i)
      wrapped.emplace_back([&slots, &tasks, i] { slots[i].emplace(tasks[i]()); });
    run_batch(std::move(wrapped));
    std::vector<R> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  }

  // Tasks executed per worker since construction or the last reset.
  std::vector<size_t> task_counts() const;
  void reset_task_counts();

 private:
  struct Queue {
    std::mutex mu;
    std::deque<size_t> tasks;
    size_t executed = 0;
  };

  void worker_loop(size_t self);
  std::optional<size_t> next_task(size_t self);
  void run_task(size_t self, size_t index);

  std::vector<std::thread> workers_;
  std::vector<std::unique_ptr<Queue>> queues_;

  std::mutex submit_mu_;  // one submission at a time
  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  bool stop_ = false;
  size_t generation_ = 0;
  size_t remaining_ = 0;
  std::vector<std::function<void()>>* current_ = nullptr;
  std::vector<std::exception_ptr> errors_;
};

// Thread count: the explicit value if given, else VFLOW_THREADS, else the
// hardware concurrency (at least 1).
size_t resolve_thread_count(std::optional<int> requested = std::nullopt);

}  // namespace vflow
