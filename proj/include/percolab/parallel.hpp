#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace percolab {

// Replica-parallel counting with a deterministic result: replicas are split
// into contiguous chunks and per-chunk counts are merged in chunk order.
inline std::uint64_t count_successes(std::uint64_t n_replicas, int threads,
                                     const std::function<bool(std::uint64_t)>& indicator) {
  if (threads <= 1 || n_replicas < 2) {
    std::uint64_t c = 0;
    for (std::uint64_t r = 0; r < n_replicas; ++r) c += indicator(r) ? 1 : 0;
    return c;
  }
  const std::uint64_t t = std::min<std::uint64_t>(threads, n_replicas);
  std::vector<std::uint64_t> counts(t, 0);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::uint64_t k = 0; k < t; ++k) {
    const std::uint64_t lo = n_replicas * k / t;
    const std::uint64_t hi = n_replicas * (k + 1) / t;
    pool.emplace_back([&, k, lo, hi] {
      std::uint64_t c = 0;
      for (std::uint64_t r = lo; r < hi; ++r) c += indicator(r) ? 1 : 0;
      counts[k] = c;
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return total;
}

}  // namespace percolab
