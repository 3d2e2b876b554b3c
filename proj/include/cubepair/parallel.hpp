#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace cubepair {

// Worker count from CUBEPAIR_JOBS, else the hardware concurrency.
int default_jobs();

// Scans [0, total) in chunks across `jobs` threads and returns the smallest
// index reported by scan(begin, end), which must return the first failing
// index in its chunk or nullopt. Chunks starting past the best failure so far
// are skipped, so the answer equals the serial one.
template <class Scan>
std::optional<std::uint64_t> find_first_failure(std::uint64_t total, int jobs, Scan&& scan,
                                                std::uint64_t chunk = 1u << 14) {
  if (total == 0) return std::nullopt;
  jobs = std::max(1, jobs);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{total};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(chunk);
      if (b >= total || b > best.load(std::memory_order_relaxed)) return;
      const std::uint64_t e = std::min(total, b + chunk);
      if (const std::optional<std::uint64_t> hit = scan(b, e)) {
        std::uint64_t cur = best.load();
        while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
        }
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  const std::uint64_t b = best.load();
  if (b == total) return std::nullopt;
  return b;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace cubepair
