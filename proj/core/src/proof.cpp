#include "gradlab/proof.hpp"

#include <cmath>

namespace gradlab {

namespace {

void check_span(double s_min, double s_max, int samples) {
  if (!(s_min < s_max)) throw std::invalid_argument("ray scan: s_min must be < s_max");
  if (samples < 2) throw std::invalid_argument("ray scan: samples must be >= 2");
}

double require_finite(double v, const char* what, const Vec& where) {
  if (!std::isfinite(v)) throw NonFiniteError(std::string(what) + " evaluated non-finite", where);
  return v;
}

}  // namespace

double ray_deviation(const ScalarField& field, const Vec& u, double s_min, double s_max,
                     int samples) {
  check_span(s_min, s_max, samples);
  const Vec g = gradient(field, u);
  const double fu = require_finite(field(u), "ray_deviation: f(u)", u);
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    const double s = s_min + (s_max - s_min) * k / (samples - 1);
    const Vec p = u + s * g;
    const double fp = require_finite(field(p), "ray_deviation: f along the ray", p);
    worst = std::max(worst, std::abs(fp - s - fu));
  }
  return worst;
}

double ray_gradient_drift(const ScalarField& field, const Vec& u, double s_min, double s_max,
                          int samples) {
  check_span(s_min, s_max, samples);
  const Vec g = gradient(field, u);
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    const double s = s_min + (s_max - s_min) * k / (samples - 1);
    worst = std::max(worst, (gradient(field, u + s * g) - g).norm());
  }
  return worst;
}

double first_order_gap(const ScalarField& field, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw DimensionError("first_order_gap: dimension mismatch");
  const double fu = require_finite(field(u), "first_order_gap: f(u)", u);
  const double fv = require_finite(field(v), "first_order_gap: f(v)", v);
  return fv - fu - gradient(field, u).dot(v - u);
}

double monotonicity_gap(const ScalarField& field, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw DimensionError("monotonicity_gap: dimension mismatch");
  return (gradient(field, u) - gradient(field, v)).dot(u - v);
}

LinePairReport line_pair_witness(const ScalarField& field, const Vec& u, const Vec& v,
                                 const Tolerances& tol) {
  tol.validate();
  const Vec gu = gradient(field, u);
  const Vec gv = gradient(field, v);
  const double nu = gu.norm();
  const double nv = gv.norm();
  if (!(nu > 0) || !(nv > 0))
    throw std::invalid_argument("line_pair_witness: zero gradient gives no line direction");
  if (std::abs(nu - nv) > 2.0 * tol.tol_grad_norm * std::max(1.0, nu)) {
    throw std::invalid_argument(
        "line_pair_witness: gradient norms differ beyond tol_grad_norm; hypotheses not met");
  }

  const Line lu = Line::through(u, gu);
  const Line lv = Line::through(v, gv);

  LinePairReport rep;
  rep.gap = closest_points_between_lines(lu, lv);
  rep.parallel = rep.gap.parallel;
  rep.u0 = lu.at(rep.gap.s_star);
  rep.v0 = lv.at(rep.gap.t_star);
  rep.f_diff = std::abs(field(rep.u0) - field(rep.v0));
  rep.grad_diff = (gradient(field, rep.u0) - gradient(field, rep.v0)).norm();
  rep.orth_residual_u = std::abs(rep.gap.diff.dot(lu.dir));
  rep.orth_residual_v = std::abs(rep.gap.diff.dot(lv.dir));
  rep.ray_deviation_u0 = ray_deviation(field, rep.u0, -10.0, 10.0, 101);
  rep.ray_deviation_v0 = ray_deviation(field, rep.v0, -10.0, 10.0, 101);
  return rep;
}

}  // namespace gradlab
