#include "orthoplex/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orthoplex {

int thread_budget() {
  int budget = 0;
  if (const char* env = std::getenv("ORTHOPLEX_THREADS")) {
    budget = std::atoi(env);
  }
  if (budget <= 0) {
    budget = static_cast<int>(std::thread::hardware_concurrency());
  }
  return budget > 0 ? budget : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  int workers = std::min(thread_budget(), count);
  if (workers <= 1 || count == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);  // drain remaining work
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace orthoplex
