#include "gradlab/lines.hpp"

#include <cmath>

namespace gradlab {

Line::Line(Vec base_in, Vec dir_in) : base(std::move(base_in)), dir(std::move(dir_in)) {
  if (base.size() != dir.size()) throw DimensionError("Line: base/dir dimension mismatch");
  if (std::abs(dir.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("Line: direction must be unit (|dir| - 1 within 1e-12)");
}

Line Line::through(Vec base_in, const Vec& direction) {
  const double n = direction.norm();
  if (!(n > 0) || !std::isfinite(n))
    throw std::invalid_argument("Line::through: zero or non-finite direction");
  return Line(std::move(base_in), direction / n);
}

LineGapResult closest_points_between_lines(const Line& l1, const Line& l2) {
  if (l1.base.size() != l2.base.size())
    throw DimensionError("closest_points_between_lines: ambient dimension mismatch");
  const Vec w = l2.base - l1.base;
  const double b = l1.dir.dot(l2.dir);

  LineGapResult res;
  if (std::abs(b) >= 1.0 - 1e-12) {
    // Parallel: any s attains the gap; fix s* = 0 and project onto l2.
    res.parallel = true;
    res.s_star = 0.0;
    res.t_star = (l1.base - l2.base).dot(l2.dir);
  } else {
    // Normal equations of |l1(s) - l2(t)|^2.
    const double denom = 1.0 - b * b;
    res.s_star = (w.dot(l1.dir) - b * w.dot(l2.dir)) / denom;
    res.t_star = b * res.s_star - w.dot(l2.dir);
  }
  res.diff = l2.at(res.t_star) - l1.at(res.s_star);
  res.gap = res.diff.norm();
  return res;
}

}  // namespace gradlab
