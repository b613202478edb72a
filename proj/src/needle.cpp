#include "favard/needle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "favard/errors.hpp"

namespace favard {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

struct Homothety {
  double ratio, tx, ty;
};

class LineTester {
 public:
  LineTester(const IFS2D& ifs, int depth) : depth_(depth) {
    const auto& b = ifs.base();
    x0_ = b.x0.to_double();
    y0_ = b.y0.to_double();
    x1_ = b.x1.to_double();
    y1_ = b.y1.to_double();
    for (const auto& f : ifs.maps()) {
      maps_.push_back({f.ratio.to_double(), f.translation.x.to_double(), f.translation.y.to_double()});
      // subtrees may be skipped only if every cylinder sits inside its parent
      prune_ = prune_ && b.contains(f.apply(b));
    }
  }

  /// Does the line {z : ux*x + uy*y = v} meet generation depth_?
  bool hits(double ux, double uy, double v) const { return descend(ux, uy, v, 1.0, 0.0, 0.0, 0); }

 private:
  bool rect_hit(double ux, double uy, double v, double s, double tx, double ty) const {
    const double a = ux * (s * x0_ + tx), b = ux * (s * x1_ + tx);
    const double c = uy * (s * y0_ + ty), d = uy * (s * y1_ + ty);
    const double lo = std::min(a, b) + std::min(c, d);
    const double hi = std::max(a, b) + std::max(c, d);
    return lo <= v && v <= hi;
  }

  bool descend(double ux, double uy, double v, double s, double tx, double ty, int level) const {
    if (level == depth_) return rect_hit(ux, uy, v, s, tx, ty);
    if (prune_ && !rect_hit(ux, uy, v, s, tx, ty)) return false;
    for (const auto& m : maps_) {
      if (descend(ux, uy, v, s * m.ratio, s * m.tx + tx, s * m.ty + ty, level + 1)) return true;
    }
    return false;
  }

  int depth_;
  double x0_, y0_, x1_, y1_;
  std::vector<Homothety> maps_;
  bool prune_ = true;
};

}  // namespace

double circumradius(const IFS2D& ifs) {
  const auto& b = ifs.base();
  return 0.5 * std::hypot(b.width().to_double(), b.height().to_double());
}

NeedleResult estimate_favard_mc(const IFS2D& ifs, const NeedleConfig& cfg, Execution exec) {
  if (cfg.trials == 0) throw PreconditionError("needle estimate needs at least one trial");
  if (cfg.batch_size == 0) throw PreconditionError("batch size must be positive");
  if (cfg.generation < 0) throw PreconditionError("generation index must be >= 0");
  const double leaves = std::pow(static_cast<double>(ifs.size()), cfg.generation);
  if (leaves > 65536.0) throw PreconditionError("generation too deep to enumerate cylinders (N^n > 65536)");
  const double radius = circumradius(ifs);
  const double w = cfg.strip_halfwidth.value_or(radius);
  if (!(w >= radius * (1 - 1e-15))) throw PreconditionError("strip half-width is smaller than the base circumradius");

  const auto& b = ifs.base();
  const double cx = 0.5 * (b.x0 + b.x1).to_double();
  const double cy = 0.5 * (b.y0 + b.y1).to_double();
  const LineTester tester(ifs, cfg.generation);
  constexpr double two_pi = 2 * std::numbers::pi;

  const std::uint64_t batches = (cfg.trials + cfg.batch_size - 1) / cfg.batch_size;
  const auto tallies = map_indices(
      static_cast<std::size_t>(batches),
      [&](std::size_t batch) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(batch)));
        const std::uint64_t begin = batch * cfg.batch_size;
        const std::uint64_t end = std::min(cfg.trials, begin + cfg.batch_size);
        std::uint64_t hits = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
          const double theta = two_pi * unit_double(rng());
          const double c = w * (2.0 * unit_double(rng()) - 1.0);
          const double ux = std::cos(theta), uy = std::sin(theta);
          if (tester.hits(ux, uy, c + ux * cx + uy * cy)) ++hits;
        }
        return hits;
      },
      exec);

  NeedleResult res;
  for (auto h : tallies) res.hits += h;
  res.trials = cfg.trials;
  res.seed = cfg.seed;
  res.strip_halfwidth = w;
  const double area = two_pi * 2 * w;
  const double p = static_cast<double>(res.hits) / static_cast<double>(res.trials);
  res.estimate = area * p;
  res.standard_error = area * std::sqrt(p * (1 - p) / static_cast<double>(res.trials));
  return res;
}

}  // namespace favard
