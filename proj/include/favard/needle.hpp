#pragma once

#include <cstdint>
#include <optional>

#include "favard/ifs.hpp"
#include "favard/kernels.hpp"

namespace favard {

/// Monte-Carlo Buffon-needle estimate of Fav(A_n).
///
/// Lines are sampled as (theta, c) with theta uniform on [0, 2pi) and c
/// uniform on [-W, W] around the base center; the estimate is
/// 2pi * 2W * hit fraction. Hit tests project rectangle corners onto the line
/// normal and never touch the interval engine.
///
/// PRNG: std::mt19937_64 (fully specified by the C++ standard), one engine
/// per batch seeded with splitmix64(seed ^ splitmix64(batch)); doubles are
/// formed from the top 53 bits. Batches are tallied in index order, so a
/// given (seed, trials, batch_size) is bit-reproducible for any thread count.
struct NeedleConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  std::optional<double> strip_halfwidth;  // defaults to the base circumradius
  int generation = 0;
  std::uint64_t batch_size = 1u << 16;
};

struct NeedleResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double strip_halfwidth = 0.0;
};

/// Distance from the base rectangle's center to its corners.
double circumradius(const IFS2D& ifs);

NeedleResult estimate_favard_mc(const IFS2D& ifs, const NeedleConfig& cfg, Execution exec = Execution::Parallel);

}  // namespace favard
