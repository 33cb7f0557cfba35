#include "revlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace revlab {

namespace {

std::atomic<int> g_threads{0};

int env_threads() {
  const char* s = std::getenv("REVLAB_THREADS");
  if (s == nullptr) return 0;
  try {
    const int n = std::stoi(s);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

template <class T>
T tree_sum(std::span<const T> v) {
  constexpr std::size_t kBlock = 32;
  if (v.size() <= kBlock) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return tree_sum(v.first(half)) + tree_sum(v.subspan(half));
}

}  // namespace

int thread_count() {
  if (const int e = env_threads(); e > 0) return e;
  const int n = g_threads.load();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int n) { g_threads.store(std::max(0, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double pairwise_sum(std::span<const double> v) { return tree_sum(v); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) { return tree_sum(v); }

}  // namespace revlab
