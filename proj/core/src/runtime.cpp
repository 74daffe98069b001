#include "vflow/runtime.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace vflow {

ThreadPool::ThreadPool(size_t workers) {
  if (workers == 0) throw std::invalid_argument("thread pool needs at least one worker");
  for (size_t i = 0; i < workers; ++i) queues_.push_back(std::make_unique<Queue>());
  for (size_t i = 0; i < workers; ++i) workers_.emplace_back([this, i] { worker_loop(i); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : workers_) t.join();
}

void ThreadPool::run_batch(std::vector<std::function<void()>> tasks) {
  if (tasks.empty()) return;
  std::lock_guard submit(submit_mu_);
  {
    std::lock_guard lock(mu_);
    current_ = &tasks;
    remaining_ = tasks.size();
    errors_.clear();
  }
  // Queues are filled after current_ is published: a worker still scanning
  // from the previous submission may pick these up immediately.
  size_t per = batch_size_for(tasks.size());
  for (size_t w = 0; w < size(); ++w) {
    std::lock_guard ql(queues_[w]->mu);
    for (size_t i = w * per; i < std::min(tasks.size(), (w + 1) * per); ++i)
      queues_[w]->tasks.push_back(i);
  }
  std::vector<std::exception_ptr> errors;
  {
    std::unique_lock lock(mu_);
    ++generation_;
    wake_.notify_all();
    done_.wait(lock, [&] { return remaining_ == 0; });
    current_ = nullptr;
    errors.swap(errors_);
  }
  if (!errors.empty()) {
    std::string what = std::to_string(errors.size()) + " task(s) failed";
    try {
      std::rethrow_exception(errors.front());
    } catch (const std::exception& e) {
      what += ": " + std::string(e.what());
    } catch (...) {
    }
    throw PoolError(what, std::move(errors));
  }
}

void ThreadPool::worker_loop(size_t self) {
  size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mu_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    while (auto t = next_task(self)) run_task(self, *t);
  }
}

std::optional<size_t> ThreadPool::next_task(size_t self) {
  Queue& own = *queues_[self];
  {
    std::lock_guard lock(own.mu);
    if (!own.tasks.empty()) {
      size_t t = own.tasks.front();
      own.tasks.pop_front();
      return t;
    }
  }
  // Steal the back half of the fullest other queue.
  for (;;) {
    size_t victim = self, most = 0;
    for (size_t w = 0; w < size(); ++w) {
      if (w == self) continue;
      std::lock_guard lock(queues_[w]->mu);
      if (queues_[w]->tasks.size() > most) most = queues_[w]->tasks.size(), victim = w;
    }
    if (victim == self) return std::nullopt;
    std::deque<size_t> stolen;
    {
      std::lock_guard lock(queues_[victim]->mu);
      auto& q = queues_[victim]->tasks;
      if (q.empty()) continue;
      size_t take = (q.size() + 1) / 2;
      stolen.assign(q.end() - static_cast<std::ptrdiff_t>(take), q.end());
      q.erase(q.end() - static_cast<std::ptrdiff_t>(take), q.end());
    }
    size_t t = stolen.front();
    stolen.pop_front();
    if (!stolen.empty()) {
      std::lock_guard lock(own.mu);
      own.tasks.insert(own.tasks.end(), stolen.begin(), stolen.end());
    }
    return t;
  }
}

void ThreadPool::run_task(size_t self, size_t index) {
  std::exception_ptr err;
  try {
    (*current_)[index]();
  } catch (...) {
    err = std::current_exception();
  }
  {
    std::lock_guard lock(queues_[self]->mu);
    ++queues_[self]->executed;
  }
  std::lock_guard lock(mu_);
  if (err) errors_.push_back(err);
  if (--remaining_ == 0) done_.notify_all();
}

std::vector<size_t> ThreadPool::task_counts() const {
  std::vector<size_t> r;
  for (const auto& q : queues_) {
    std::lock_guard lock(q->mu);
    r.push_back(q->executed);
  }
  return r;
}

void ThreadPool::reset_task_counts() {
  for (auto& q : queues_) {
    std::lock_guard lock(q->mu);
    q->executed = 0;
  }
}

size_t resolve_thread_count(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw std::invalid_argument("thread count must be at least 1");
    return static_cast<size_t>(*requested);
  }
  if (const char* env = std::getenv("VFLOW_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return static_cast<size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace vflow
