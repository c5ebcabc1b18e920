#pragma once

#include <cstdint>
#include <vector>

#include "gradlab/field.hpp"

namespace gradlab {

struct FixedPointOptions {
  int max_iters = 50000;
  int extra_starts = 3;   // seeded starts besides the origin
  std::uint64_t seed = 0;
  Tolerances tol;
};

struct FixedPointResult {
  Vec point;
  double radius = 0;
  double residual = 0;
  int iterations = 0;
  bool converged = false;
};

/// Fixed point of u -> r grad f(u) on the ball B_r, located by residual
/// minimization (the map need not be a contraction). When |grad f| == 1
/// everywhere the point lands on the sphere |p| = r.
FixedPointResult brouwer_fixed_point(const ScalarField& field, double r,
                                     const FixedPointOptions& opts = {});

/// Solves u + r grad f(u) = 0 by the damped iteration
/// u <- u - tau (u + r grad f(u)), tau = 1/(1 + r L) with L a sampled
/// Lipschitz estimate of grad f. Requires convex + differentiable claims.
FixedPointResult resolvent_point(const ScalarField& field, double r,
                                 const FixedPointOptions& opts = {});

enum class FixedPointKind { Brouwer, Resolvent };

struct LimitDirectionTrace {
  std::vector<FixedPointResult> fixed_points;
  std::vector<Vec> directions;  // u_r/r (Brouwer) or -u_r/r (Resolvent) per radius
};

/// u_r/r at the smallest radius of a decreasing schedule (last <= 1e-3);
/// recovers grad f(0) when the gradient norm is constant.
Vec limit_direction(const ScalarField& field, const std::vector<double>& radii,
                    FixedPointKind kind = FixedPointKind::Brouwer,
                    const FixedPointOptions& opts = {},
                    LimitDirectionTrace* trace = nullptr);

}  // namespace gradlab
