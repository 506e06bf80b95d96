#include "aab/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aab {
namespace {

std::atomic<int> g_num_threads_override{0};

int ThreadsFromEnvironment() {
  const char* value = std::getenv("AAB_THREADS");
  if (value == nullptr) return 0;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (end == value || parsed <= 0) return 0;
  return static_cast<int>(std::min<long>(parsed, 1024));
}

}  // namespace

int NumThreads() {
  if (const int n = g_num_threads_override.load(); n > 0) return n;
  if (const int n = ThreadsFromEnvironment(); n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void SetNumThreads(int num_threads) {
  g_num_threads_override.store(std::max(0, num_threads));
}

void ParallelFor(size_t count,
                 const std::function<void(size_t, size_t)>& fn) {
  if (count == 0) return;
  const size_t workers =
      std::min(count, static_cast<size_t>(std::max(1, NumThreads())));
  if (workers == 1) {
    fn(0, count);
    return;
  }

  const size_t block = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (size_t w = 0; w < workers; ++w) {
    const size_t begin = w * block;
    const size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) thread.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace aab
