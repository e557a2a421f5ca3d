#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace tropws::detail {

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first failure.
template <class Fn>
void parallel_for(int n, int jobs, Fn fn) {
  jobs = std::max(1, std::min(jobs, n));
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](int t) {
    try {
      for (int i = t; i < n; i += jobs) fn(i);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tropws::detail
