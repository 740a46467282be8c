#pragma once

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <vector>

namespace litespark::detail {

// Persistent worker pool for column-partitioned matmul tasks. Workers are
// spawned on demand and reused, so a steady-state dispatch performs no heap
// allocation. Tasks are claimed through an atomic counter; each task index
// is processed exactly once, by whichever thread claims it.
class ThreadPool {
 public:
  static ThreadPool& instance();

  // Runs fn(ctx, i) for every i in [0, task_count) using up to `threads`
  // threads (the calling thread participates). Returns after all tasks
  // finished. Serializes concurrent callers.
  void run(int threads, int task_count, void (*fn)(void*, int), void* ctx);

  ~ThreadPool();

 private:
  ThreadPool() = default;
  void ensure_workers(int count);
  void worker_loop();

  std::mutex submit_mutex_;  // one parallel region at a time

  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::vector<std::thread> workers_;

  // Current job, guarded by mutex_ for publication; claimed via atomics.
  void (*fn_)(void*, int) = nullptr;
  void* ctx_ = nullptr;
  int task_count_ = 0;
  uint64_t generation_ = 0;
  std::atomic<int> next_task_{0};
  std::atomic<int> active_workers_{0};
  bool shutdown_ = false;
};

}  // namespace litespark::detail
