#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace pautom {

/// Runs fn(i) for i in [0, count). Work is chunked over `workers` threads;
/// callers that need deterministic output must write per-index results and
/// reduce in index order afterwards.
template <typename Fn>
void parallel_for(std::uint64_t count, int workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::uint64_t w = static_cast<std::uint64_t>(workers);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::uint64_t t = 0; t < w; ++t) {
    const std::uint64_t lo = count * t / w;
    const std::uint64_t hi = count * (t + 1) / w;
    pool.emplace_back([lo, hi, &fn] {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace pautom
