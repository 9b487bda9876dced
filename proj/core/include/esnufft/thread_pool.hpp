#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace esnufft {

/// Fixed set of workers that run one indexed task range at a time.
///
/// The calling thread participates as worker 0, so a pool of size 1 spawns no
/// threads and runs tasks inline in index order. Tasks are handed out from a
/// shared counter; a task's `worker` argument is stable for its duration and
/// lies in [0, size()), which lets callers keep per-worker scratch.
class ThreadPool {
 public:
  using Task = std::function<void(std::int64_t task, int worker)>;

  /// `workers == 0` picks std::thread::hardware_concurrency().
  explicit ThreadPool(int workers = 0);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int size() const noexcept { return static_cast<int>(threads_.size()) + 1; }

  /// Runs task(i, worker) for every i in [0, count) and returns when all have
  /// finished. The first exception thrown by any task is rethrown here.
  void parallel_for(std::int64_t count, const Task& task);

 private:
  void worker_loop(int worker);
  void drain(int worker);

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const Task* task_ = nullptr;
  std::int64_t count_ = 0;
  std::atomic<std::int64_t> next_{0};
  std::uint64_t generation_ = 0;
  int active_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

/// Splits [0, total) into `parts` contiguous chunks of near-equal length and
/// returns the half-open bounds of chunk `part`.
inline std::pair<std::int64_t, std::int64_t> chunk_bounds(std::int64_t total, std::int64_t parts,
                                                          std::int64_t part) noexcept {
  const std::int64_t base = total / parts;
  const std::int64_t extra = total % parts;
  const std::int64_t begin = part * base + (part < extra ? part : extra);
  return {begin, begin + base + (part < extra ? 1 : 0)};
}

}  // namespace esnufft
