#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <type_traits>
#include <vector>

#include "favard/projection.hpp"

namespace favard {

enum class Execution { Serial, Parallel };

/// Worker count used by Parallel kernels; 0 restores the OpenMP default.
void set_thread_count(int n);
int thread_count();

/// Evaluates f(0..count-1) into a vector indexed like the input.
///
/// Parallel runs an OpenMP dynamic-schedule loop; Serial is the plain
/// reference loop. Each slot is written by exactly one iteration, so both
/// produce identical vectors whenever f is deterministic. The first
/// exception thrown by any iteration is rethrown after the loop.
template <class F>
auto map_indices(std::size_t count, F&& f, Execution exec) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(count);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr failure;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(favard_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// True projected lengths alpha_n at each direction.
std::vector<double> alpha_sweep(const IFS2D& ifs, std::span<const Direction> dirs, int n, Backend backend,
                                Execution exec = Execution::Parallel, std::size_t cap = kDefaultIntervalCap);

/// Exact sheared lengths plus scale at each direction.
std::vector<ExactAlpha> alpha_sweep_exact(const IFS2D& ifs, std::span<const Direction> dirs, int n,
                                          Execution exec = Execution::Parallel,
                                          std::size_t cap = kDefaultIntervalCap);

}  // namespace favard
