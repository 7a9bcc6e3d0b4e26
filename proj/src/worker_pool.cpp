#include "specpath/worker_pool.hpp"

#include <utility>

#include "specpath/errors.hpp"

namespace specpath {

WorkerPool::WorkerPool(std::size_t workers) {
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) threads_.emplace_back([this, i] { worker_loop(i); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::run(std::size_t task_count, const std::function<void(std::size_t)>& task) {
  if (task_count == 0) return;
  ++runs_;
  if (threads_.empty()) {
    for (std::size_t i = 0; i < task_count; ++i) task(i);
    return;
  }
  if (task_count > threads_.size()) throw ContractViolation("WorkerPool::run: more tasks than workers");

  std::unique_lock lock(mu_);
  task_ = &task;
  task_count_ = task_count;
  pending_ = task_count;
  error_ = nullptr;
  ++generation_;
  lock.unlock();
  start_cv_.notify_all();

  lock.lock();
  done_cv_.wait(lock, [this] { return pending_ == 0; });
  task_ = nullptr;
  if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
}

void WorkerPool::worker_loop(std::size_t index) {
  std::uint64_t seen = 0;
  while (true) {
    std::unique_lock lock(mu_);
    start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
    if (stopping_) return;
    seen = generation_;
    if (index >= task_count_) continue;
    const auto* task = task_;
    lock.unlock();

    std::exception_ptr failure;
    try {
      (*task)(index);
    } catch (...) {
      failure = std::current_exception();
    }

    lock.lock();
    if (failure && !error_) error_ = failure;
    if (--pending_ == 0) done_cv_.notify_one();
  }
}

}  // namespace specpath
