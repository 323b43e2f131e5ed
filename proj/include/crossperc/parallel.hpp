#pragma once

// Replica fan-out. Replicas are cut into fixed chunks accumulated
// sequentially; chunk results merge in chunk order, so the thread count
// never changes the outcome.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crossperc {

inline constexpr std::uint64_t kReplicaChunk = 64;

/// CROSSPERC_THREADS if set and positive, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char *env = std::getenv("CROSSPERC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// `body(replica, acc)` folds one replica into a chunk accumulator;
/// `merge(into, from)` combines chunk accumulators.
template <class Acc, class Body, class Merge>
Acc reduce_replicas(std::uint64_t replicas, Body body, Merge merge, unsigned threads = worker_count()) {
  const std::uint64_t chunks = (replicas + kReplicaChunk - 1) / kReplicaChunk;
  std::vector<Acc> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      try {
        const std::uint64_t end = std::min(replicas, (c + 1) * kReplicaChunk);
        for (std::uint64_t r = c * kReplicaChunk; r < end; ++r)
          body(r, partial[c]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };

  const auto n = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, threads), std::max<std::uint64_t>(chunks, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }
  if (failure)
    std::rethrow_exception(failure);

  Acc total{};
  for (auto &p : partial)
    merge(total, p);
  return total;
}

} // namespace crossperc
