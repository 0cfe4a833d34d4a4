#include "rdsss/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rdsss {
namespace {

std::atomic<unsigned> g_thread_limit{0};
thread_local bool t_inside_pool = false;

unsigned default_threads() {
  if (const char* env = std::getenv("RDS_SS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

unsigned thread_limit() {
  const unsigned v = g_thread_limit.load();
  return v == 0 ? default_threads() : v;
}

void set_thread_limit(unsigned threads) { g_thread_limit.store(threads); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  // Nested calls run inline on the worker that issued them.
  const std::size_t workers = t_inside_pool ? 1 : std::min<std::size_t>(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&] {
    const bool was_inside = t_inside_pool;
    t_inside_pool = true;
    struct Restore {
      bool value;
      ~Restore() { t_inside_pool = value; }
    } restore{was_inside};
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rdsss
