#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace layerwr {

/// Worker count for parallel scans: hardware concurrency, capped by the
/// LAYERWR_THREADS environment variable when set. Always at least 1.
inline size_t worker_count() {
  size_t n = std::thread::hardware_concurrency();
  if (n == 0) {
    n = 1;
  }
  if (const char* env = std::getenv("LAYERWR_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && static_cast<size_t>(cap) < n) {
      n = static_cast<size_t>(cap);
    }
  }
  return n;
}

}  // namespace layerwr
