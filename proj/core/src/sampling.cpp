#include "gradlab/sampling.hpp"

#include <cmath>

#include "gradlab/rng.hpp"

namespace gradlab {

std::vector<Vec> sample_points(const Domain& domain, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_points: count must be >= 1");
  const int dim = domain.dim();
  const CounterRng rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));

  if (domain.is_box()) {
    const Box& b = domain.as_box();
    for (int i = 0; i < count; ++i) {
      Vec p(dim);
      for (int j = 0; j < dim; ++j) {
        const std::uint64_t c = static_cast<std::uint64_t>(i) * dim + j;
        p[j] = rng.uniform(c, b.lo[j], b.hi[j]);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  // Ball: gaussian direction, radius scaled by R * U^(1/dim).
  const Ball& ball = domain.as_ball();
  const std::uint64_t stride = 2 * static_cast<std::uint64_t>(dim) + 2;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * stride;
    Vec dir(dim);
    for (int j = 0; j < dim; ++j) dir[j] = rng.gaussian(base / 2 + j);
    double n = dir.norm();
    if (n == 0) {
      dir.setZero();
      dir[0] = 1.0;
      n = 1.0;
    }
    const double u = rng.uniform(base + 2 * static_cast<std::uint64_t>(dim));
    const double r = ball.radius * std::pow(u, 1.0 / dim);
    out.push_back(ball.center + (r / n) * dir);
  }
  return out;
}

}  // namespace gradlab
