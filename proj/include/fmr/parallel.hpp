#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fmr {

/// Process-wide worker count used by the transforms. 1 means serial.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, count) across thread_count() workers using
/// contiguous blocks. Callers must only write to per-index outputs so the
/// result does not depend on the worker count.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fmr
