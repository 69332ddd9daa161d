#include "nlc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace nlc {

namespace {

unsigned resolve(unsigned count) {
  if (count > 0) return count;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned>& configured() {
  static std::atomic<unsigned> value{[] {
    const char* env = std::getenv("NLC_THREADS");
    return env != nullptr ? static_cast<unsigned>(std::strtoul(env, nullptr, 10)) : 0u;
  }()};
  return value;
}

}  // namespace

void set_thread_count(unsigned count) { configured().store(count); }

unsigned thread_count() { return resolve(configured().load()); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  // A few chunks per worker evens out uneven per-index cost.
  const std::size_t chunks = std::min<std::size_t>(n, workers * 4);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      try {
        fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace nlc
