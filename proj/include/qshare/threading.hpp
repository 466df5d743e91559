#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

// Deterministic fan-out helper. Work is cut into fixed-size blocks; workers
// pull blocks by index and results merge in block order, so the outcome is
// identical for any worker count. QSHARE_THREADS caps the pool (0/unset =
// hardware concurrency).

namespace qshare {

inline unsigned configured_thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("QSHARE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return n;
}

inline constexpr std::uint64_t kBlockSize = 1024;

struct BlockRange {
  std::uint64_t index;
  std::uint64_t begin;
  std::uint64_t end;
};

// Runs fn(BlockRange) over [0, total) cut into kBlockSize blocks. fn must
// write only into its own block's slot; merging is the caller's job and
// must walk blocks in index order.
template <typename Fn>
void for_each_block(std::uint64_t total, Fn&& fn, unsigned thread_cap = 0) {
  if (total == 0) return;
  const std::uint64_t blocks = (total + kBlockSize - 1) / kBlockSize;
  unsigned workers = thread_cap ? thread_cap : configured_thread_count();
  if (workers > blocks) workers = static_cast<unsigned>(blocks);

  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b)
      fn(BlockRange{b, b * kBlockSize, std::min(total, (b + 1) * kBlockSize)});
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t b = next.fetch_add(1);
        if (b >= blocks) return;
        fn(BlockRange{b, b * kBlockSize, std::min(total, (b + 1) * kBlockSize)});
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

} // namespace qshare
