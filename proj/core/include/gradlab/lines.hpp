#pragma once

#include "gradlab/types.hpp"

namespace gradlab {

/// Parameterized line base + s * dir with |dir| = 1 (within 1e-12).
struct Line {
  Line(Vec base_in, Vec dir_in);

  /// Normalizes the direction; throws on a zero direction.
  static Line through(Vec base_in, const Vec& direction);

  Vec at(double s) const { return base + s * dir; }

  Vec base;
  Vec dir;
};

struct LineGapResult {
  double s_star = 0;
  double t_star = 0;
  double gap = 0;
  Vec diff;              // l2(t*) - l1(s*); orthogonal to both dirs when non-parallel
  bool parallel = false;
};

/// Closed-form closest pair via the 2x2 normal equations. Parallel lines
/// (|<d1,d2>| >= 1 - 1e-12) use the convention s* = 0 with t* the
/// projection of l1.base onto l2.
LineGapResult closest_points_between_lines(const Line& l1, const Line& l2);

}  // namespace gradlab
