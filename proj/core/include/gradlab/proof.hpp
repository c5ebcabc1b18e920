#pragma once

#include "gradlab/field.hpp"
#include "gradlab/lines.hpp"

namespace gradlab {

/// max over sampled s in [s_min, s_max] of |f(u + s grad f(u)) - s - f(u)|;
/// zero exactly when the ray identity holds along the gradient line.
double ray_deviation(const ScalarField& field, const Vec& u, double s_min, double s_max,
                     int samples);

/// max over sampled s of |grad f(u + s grad f(u)) - grad f(u)|.
double ray_gradient_drift(const ScalarField& field, const Vec& u, double s_min,
                          double s_max, int samples);

/// f(v) - f(u) - <grad f(u), v - u>; nonnegative for convex fields.
double first_order_gap(const ScalarField& field, const Vec& u, const Vec& v);

/// <grad f(u) - grad f(v), u - v>; nonnegative for monotone gradient maps.
double monotonicity_gap(const ScalarField& field, const Vec& u, const Vec& v);

/// Numerical rendition of the closing argument: build the gradient lines at
/// u and v, take their closest pair (u0, v0), and measure every identity the
/// argument needs. All residuals vanish for a constant-norm convex field.
struct LinePairReport {
  bool parallel = false;
  LineGapResult gap;
  Vec u0, v0;
  double f_diff = 0;             // |f(u0) - f(v0)|
  double grad_diff = 0;          // |grad f(u0) - grad f(v0)|
  double orth_residual_u = 0;    // |<v0 - u0, dir_u>|
  double orth_residual_v = 0;    // |<v0 - u0, dir_v>|
  double ray_deviation_u0 = 0;   // ray identity over s in [-10, 10] at u0
  double ray_deviation_v0 = 0;
};

LinePairReport line_pair_witness(const ScalarField& field, const Vec& u, const Vec& v,
                                 const Tolerances& tol = {});

}  // namespace gradlab
