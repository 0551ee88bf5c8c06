#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gaussbounds {

/// Calls fn(i) for i in [0, count), indices dealt round-robin to at most
/// `threads` workers.  The first exception from any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::size_t>(count, 1 << 20))));
  if (t == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(t)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace gaussbounds
