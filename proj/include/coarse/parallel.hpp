#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace coarse {

/// Worker count for exhaustive passes: COARSE_EXT_THREADS if set and
/// positive, otherwise the hardware concurrency.
inline std::size_t thread_count() {
  if (const char* env = std::getenv("COARSE_EXT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, n) into contiguous chunks and runs fn(chunk, begin, end) on
/// each. Results must be merged by the caller in chunk order so that the
/// outcome does not depend on scheduling.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, Fn&& fn) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  if (chunks == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks - 1);
  const std::size_t step = (n + chunks - 1) / chunks;
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t b = std::min(n, c * step);
    const std::size_t e = std::min(n, b + step);
    workers.emplace_back([&fn, c, b, e] { fn(c, b, e); });
  }
  fn(std::size_t{0}, std::size_t{0}, std::min(n, step));
  for (auto& w : workers) w.join();
}

/// Chunk count for a pass over n items; small passes stay single-threaded.
inline std::size_t chunks_for(std::size_t n, std::size_t min_per_chunk = 64) {
  return std::max<std::size_t>(1, std::min(thread_count(), n / std::max<std::size_t>(1, min_per_chunk)));
}

}  // namespace coarse
