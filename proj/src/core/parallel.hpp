#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace mppc {

// Chunked parallel loop. Work is split into fixed-size chunks that do not
// depend on the thread count, so per-chunk partial results can be combined
// in chunk order and the final result is identical for any number of
// threads (including 1).
inline constexpr std::int64_t kParallelChunk = 8192;

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// body(chunk_index, begin, end)
template <typename Body>
void for_each_chunk(std::int64_t n, int threads, Body&& body) {
  if (n <= 0) return;
  std::int64_t nchunks = (n + kParallelChunk - 1) / kParallelChunk;
  int nthreads = std::min<std::int64_t>(resolve_threads(threads), nchunks);
  if (nthreads <= 1 || n < 2 * kParallelChunk) {
    for (std::int64_t c = 0; c < nchunks; ++c) {
      std::int64_t b = c * kParallelChunk;
      body(c, b, std::min(n, b + kParallelChunk));
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::int64_t c = t; c < nchunks; c += nthreads) {
        std::int64_t b = c * kParallelChunk;
        body(c, b, std::min(n, b + kParallelChunk));
      }
    });
  }
  for (auto& th : pool) th.join();
}

inline std::int64_t chunk_count(std::int64_t n) {
  return n <= 0 ? 0 : (n + kParallelChunk - 1) / kParallelChunk;
}

}  // namespace mppc
