#include "gradlab/report.hpp"

#include <json.hpp>

namespace gradlab {

namespace {

using Json = nlohmann::ordered_json;

Json to_json_array(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json verdict_params(const Verdict& v) {
  Json p = Json::object();
  switch (v.kind()) {
    case VerdictKind::Affine: {
      const auto& a = std::get<AffineVerdict>(v.outcome);
      p["c1"] = to_json_array(a.c1);
      p["c0"] = a.c0;
      break;
    }
    case VerdictKind::Constant:
      p["c0"] = std::get<ConstantVerdict>(v.outcome).c0;
      break;
    case VerdictKind::NotConstantNorm: {
      const auto& n = std::get<NotConstantNormVerdict>(v.outcome);
      p["spread"] = n.spread;
      p["min"] = n.min;
      p["max"] = n.max;
      break;
    }
    case VerdictKind::NotConvex: {
      const auto& n = std::get<NotConvexVerdict>(v.outcome);
      p["u"] = to_json_array(n.u);
      p["v"] = to_json_array(n.v);
      p["gap"] = n.gap;
      break;
    }
    case VerdictKind::NotDifferentiable: {
      const auto& n = std::get<NotDifferentiableVerdict>(v.outcome);
      p["point"] = to_json_array(n.point);
      break;
    }
  }
  return p;
}

Json verdict_evidence(const Verdict& v) {
  Json e = Json::object();
  e["samples"] = v.report.gradnorm.samples;
  e["excluded"] = v.report.gradnorm.excluded;
  e["unstable"] = v.report.gradnorm.unstable;
  switch (v.kind()) {
    case VerdictKind::Affine:
      e["max_affine_residual"] = std::get<AffineVerdict>(v.outcome).max_residual;
      break;
    case VerdictKind::NotConstantNorm: {
      const double r = std::get<NotConstantNormVerdict>(v.outcome).affine_residual;
      if (r > 0) e["affine_residual"] = r;
      break;
    }
    case VerdictKind::NotDifferentiable:
      e["instability"] = std::get<NotDifferentiableVerdict>(v.outcome).evidence;
      break;
    default:
      break;
  }
  return e;
}

}  // namespace

std::string to_json(const Verdict& verdict, int indent) {
  const WitnessReport& r = verdict.report;
  Json doc = Json::object();

  doc["gradnorm"] = {
      {"min", finite_or_null(r.gradnorm.min)},
      {"max", finite_or_null(r.gradnorm.max)},
      {"mean", finite_or_null(r.gradnorm.mean)},
      {"spread", finite_or_null(r.gradnorm.spread)},
  };

  Json fps = Json::array();
  for (const FixedPointRecord& rec : r.fixed_points) {
    fps.push_back({
        {"kind", rec.kind},
        {"r", rec.result.radius},
        {"point", to_json_array(rec.result.point)},
        {"residual", rec.result.residual},
        {"iterations", rec.result.iterations},
        {"converged", rec.result.converged},
        {"sphere_gap", rec.sphere_gap},
    });
  }
  doc["fixed_points"] = std::move(fps);

  Json rays = Json::array();
  for (const RayRecord& rec : r.rays) {
    rays.push_back({
        {"base", to_json_array(rec.base)},
        {"s_min", rec.s_min},
        {"s_max", rec.s_max},
        {"samples", rec.samples},
        {"deviation", rec.deviation},
        {"gradient_drift", rec.gradient_drift},
    });
  }
  doc["rays"] = std::move(rays);

  Json gaps = Json::array();
  for (const LinePairReport& rec : r.line_gaps) {
    gaps.push_back({
        {"parallel", rec.parallel},
        {"gap", rec.gap.gap},
        {"s_star", rec.gap.s_star},
        {"t_star", rec.gap.t_star},
        {"f_diff", rec.f_diff},
        {"grad_diff", rec.grad_diff},
        {"orth_residual_u", rec.orth_residual_u},
        {"orth_residual_v", rec.orth_residual_v},
        {"ray_deviation_u0", rec.ray_deviation_u0},
        {"ray_deviation_v0", rec.ray_deviation_v0},
    });
  }
  doc["line_gaps"] = std::move(gaps);

  doc["convexity"] = {
      {"min_first_order_gap", finite_or_null(r.convexity.min_first_order_gap)},
      {"min_monotonicity", finite_or_null(r.convexity.min_monotonicity)},
  };

  doc["verdict"] = {
      {"kind", to_string(verdict.kind())},
      {"params", verdict_params(verdict)},
      {"evidence", verdict_evidence(verdict)},
  };

  return doc.dump(indent) + "\n";
}

}  // namespace gradlab
