#include "mforge/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace mforge {

std::size_t worker_threads() {
  static const std::size_t cached = [] {
    const char* env = std::getenv("MULTIPLEX_FORGE_THREADS");
    if (!env) return std::size_t{1};
    try {
      long v = std::stol(env);
      if (v < 1) return std::size_t{1};
      return static_cast<std::size_t>(v);
    } catch (...) {
      return std::size_t{1};
    }
  }();
  return cached;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mforge
