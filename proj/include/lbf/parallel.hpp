// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace lbf {

// Worker count for encode: LBF_THREADS caps it, 0 (or 1) means sequential,
// unset falls back to the hardware thread count.
inline unsigned worker_count_from_env() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("LBF_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  unsigned long requested = 0;
  try {
    requested = std::stoul(env);
  } catch (...) {
    return hw;
  }
  if (requested <= 1) return 1;
  return requested < hw ? static_cast<unsigned>(requested) : hw;
}

// Chunked parallel loop over [0, count). Each worker owns a contiguous
// range, so callers writing to per-index slots need no locking. workers
// <= 1 runs inline.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t n_workers =
      std::min<std::size_t>(workers, count);
  const std::size_t chunk = (count + n_workers - 1) / n_workers;
  std::vector<std::thread> threads;
  threads.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(begin + chunk, count);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace lbf
