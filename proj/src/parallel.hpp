#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ssimlab {

// Worker cap: SSIMLAB_THREADS if set (>=1), else hardware concurrency.
// Re-read on every call so tests can vary it between runs.
inline unsigned thread_cap() {
  if (const char* env = std::getenv("SSIMLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) over disjoint chunks of [0, n). Each index belongs to
// exactly one chunk and chunk results are written to per-index slots by the
// caller, so the outcome is independent of the number of workers.
template <class Fn>
void parallel_for(std::size_t n, const Fn& fn) {
  const unsigned cap = thread_cap();
  if (cap <= 1 || n < 4096) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(cap, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ssimlab
