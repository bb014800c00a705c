#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace mup {

// Every kernel that takes an Execution has a serial path that is the reference;
// the parallel path must produce bit-identical results (work is split by index,
// reductions happen afterwards in index order).
enum class Execution { serial, parallel };

int hardware_threads();

template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mup_for_each_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, Execution exec, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(n, exec, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace mup
