#include "thread_pool.hpp"

#include <algorithm>

namespace litespark::detail {

ThreadPool& ThreadPool::instance() {
  static ThreadPool pool;
  return pool;
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    shutdown_ = true;
  }
  wake_.notify_all();
  for (auto& w : workers_) w.join();
}

void ThreadPool::ensure_workers(int count) {
  while (static_cast<int>(workers_.size()) < count)
    workers_.emplace_back([this] { worker_loop(); });
}

void ThreadPool::worker_loop() {
  uint64_t seen_generation = 0;
  for (;;) {
    void (*fn)(void*, int);
    void* ctx;
    int task_count;
    {
      std::unique_lock<std::mutex> lock(mutex_);
      wake_.wait(lock, [&] { return shutdown_ || generation_ != seen_generation; });
      if (shutdown_) return;
      seen_generation = generation_;
      fn = fn_;
      ctx = ctx_;
      task_count = task_count_;
    }
    for (;;) {
      const int i = next_task_.fetch_add(1, std::memory_order_relaxed);
      if (i >= task_count) break;
      fn(ctx, i);
    }
    if (active_workers_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
      std::lock_guard<std::mutex> lock(mutex_);
      done_.notify_all();
    }
  }
}

void ThreadPool::run(int threads, int task_count, void (*fn)(void*, int), void* ctx) {
  if (task_count <= 0) return;
  threads = std::max(1, std::min(threads, task_count));
  if (threads == 1) {
    for (int i = 0; i < task_count; ++i) fn(ctx, i);
    return;
  }

  std::lock_guard<std::mutex> submit(submit_mutex_);
  const int helpers = threads - 1;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure_workers(helpers);
    fn_ = fn;
    ctx_ = ctx;
    task_count_ = task_count;
    next_task_.store(0, std::memory_order_relaxed);
    // Only `helpers` of the spawned workers pick up this job in the common
    // case, but any extra workers exiting the claim loop immediately is
    // harmless; count every worker that may wake.
    active_workers_.store(static_cast<int>(workers_.size()), std::memory_order_relaxed);
    ++generation_;
  }
  wake_.notify_all();

  // Caller participates in the same claim loop.
  for (;;) {
    const int i = next_task_.fetch_add(1, std::memory_order_relaxed);
    if (i >= task_count) break;
    fn(ctx, i);
  }

  std::unique_lock<std::mutex> lock(mutex_);
  done_.wait(lock, [&] { return active_workers_.load(std::memory_order_acquire) == 0; });
}

}  // namespace litespark::detail
