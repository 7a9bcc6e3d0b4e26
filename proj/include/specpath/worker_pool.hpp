#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace specpath {

// Persistent pool of workers driven in lock-step batches. In run(n, task) worker i executes
// task(i) for every i < n; the call returns once all n tasks have finished. A pool of zero
// workers runs the tasks inline on the caller's thread.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const noexcept { return threads_.size(); }
  // Number of non-empty run() calls so far.
  std::uint64_t runs() const noexcept { return runs_; }

  // Rethrows the first exception raised by a task, after every task has stopped.
  void run(std::size_t task_count, const std::function<void(std::size_t)>& task);

 private:
  void worker_loop(std::size_t index);

  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  std::uint64_t generation_ = 0;
  std::size_t task_count_ = 0;
  std::size_t pending_ = 0;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::exception_ptr error_;
  bool stopping_ = false;
  std::uint64_t runs_ = 0;
  std::vector<std::thread> threads_;
};

}  // namespace specpath
