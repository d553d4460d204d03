#ifndef ASTAR_DETAIL_PARALLEL_HPP
#define ASTAR_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace astar::detail {

/// Worker cap from ASTAR_THREADS; unset, unparsable or 0 means serial.
inline int threads_from_env() {
  const char* s = std::getenv("ASTAR_THREADS");
  if (s == nullptr) return 0;
  try {
    return std::max(0, std::stoi(s));
  } catch (const std::exception&) {
    return 0;
  }
}

/// Runs f(i) for i in [0, count). Work is strided over at most `threads`
/// workers; callers write into slot i only, so results never depend on the
/// schedule. The first exception (by worker index) is rethrown.
template <class F>
void parallel_for(std::size_t count, int threads, F&& f) {
  const std::size_t workers = std::min<std::size_t>(threads > 1 ? std::size_t(threads) : 1, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += workers) f(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace astar::detail

#endif  // ASTAR_DETAIL_PARALLEL_HPP
