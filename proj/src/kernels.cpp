#include "favard/kernels.hpp"

#include <omp.h>

namespace favard {

namespace {
const int g_initial_threads = omp_get_max_threads();
}

void set_thread_count(int n) { omp_set_num_threads(n > 0 ? n : g_initial_threads); }

int thread_count() { return omp_get_max_threads(); }

std::vector<double> alpha_sweep(const IFS2D& ifs, std::span<const Direction> dirs, int n, Backend backend,
                                Execution exec, std::size_t cap) {
  return map_indices(
      dirs.size(), [&](std::size_t i) { return alpha(ifs, dirs[i], n, backend, cap); }, exec);
}

std::vector<ExactAlpha> alpha_sweep_exact(const IFS2D& ifs, std::span<const Direction> dirs, int n,
                                          Execution exec, std::size_t cap) {
  return map_indices(
      dirs.size(), [&](std::size_t i) { return alpha_exact(ifs, dirs[i], n, cap); }, exec);
}

}  // namespace favard
