#include "gradlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gradlab/rng.hpp"
#include "gradlab/sampling.hpp"

namespace gradlab {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Affine: return "Affine";
    case VerdictKind::Constant: return "Constant";
    case VerdictKind::NotConstantNorm: return "NotConstantNorm";
    case VerdictKind::NotConvex: return "NotConvex";
    case VerdictKind::NotDifferentiable: return "NotDifferentiable";
  }
  return "Unknown";
}

bool Verdict::contradicts(const FieldClaims& claims, bool convex_mode) const {
  switch (kind()) {
    case VerdictKind::Affine:
    case VerdictKind::Constant:
      return !claims.convex || !claims.differentiable;
    case VerdictKind::NotConstantNorm:
      return false;
    case VerdictKind::NotConvex:
      return convex_mode && claims.convex;
    case VerdictKind::NotDifferentiable:
      return claims.differentiable;
  }
  return false;
}

namespace {

struct SamplePoint {
  Vec u;
  double f = 0;
  std::optional<Vec> grad;   // absent when the gradient evaluation failed
  double instability = 0;    // FD step-halving disagreement
  bool stable = false;
};

// Central FD of f at p with steps h and h/10; kinks closer than the stencil
// radius make the two disagree by O(1) while smooth fields agree to O(h^2).
double fd_disagreement(const ScalarField& field, const Vec& p, double h) {
  Vec probe = p;
  double worst = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    double g[2];
    for (int k = 0; k < 2; ++k) {
      const double step = (k == 0) ? h : h / 10.0;
      probe[i] = pi + step;
      const double fp = field.eval(probe);
      probe[i] = pi - step;
      const double fm = field.eval(probe);
      probe[i] = pi;
      if (!std::isfinite(fp) || !std::isfinite(fm))
        return std::numeric_limits<double>::infinity();
      g[k] = (fp - fm) / (2.0 * step);
    }
    worst = std::max(worst, std::abs(g[0] - g[1]));
  }
  return worst;
}

// Probe at the sample and at a half-step diagonal offset; the offset
// catches kinks passing exactly through the sample, where symmetric
// differences cancel.
double instability_at(const ScalarField& field, const Vec& u, double h) {
  double m = fd_disagreement(field, u, h);
  m = std::max(m, fd_disagreement(field, u + Vec::Constant(u.size(), h / 2.0), h));
  return m;
}

Verdict negate_outcome(Verdict v) {
  if (auto* a = std::get_if<AffineVerdict>(&v.outcome)) {
    a->c1 = -a->c1;
    a->c0 = -a->c0;
  } else if (auto* c = std::get_if<ConstantVerdict>(&v.outcome)) {
    c->c0 = -c->c0;
  }
  return v;
}

}  // namespace

Verdict classify_field(const ScalarField& field, const Domain& domain, const Tolerances& tol,
                       ClassifyMode mode, const ClassifyOptions& opts) {
  tol.validate();
  if (domain.dim() != field.dim)
    throw DimensionError("classify_field: domain and field dimensions differ");
  if (domain.min_extent() < 10.0 * tol.fd_step)
    throw std::invalid_argument("classify_field: domain is degenerate below the FD step scale");
  if (mode == ClassifyMode::Concave) {
    return negate_outcome(
        classify_field(negate(field), domain, tol, ClassifyMode::Convex, opts));
  }

  // Sample set: the domain center first (so symmetric extremes like the
  // origin are always probed), then seeded points.
  std::vector<SamplePoint> pts;
  pts.reserve(static_cast<std::size_t>(opts.samples) + 1);
  {
    SamplePoint c;
    c.u = domain.center();
    pts.push_back(std::move(c));
    for (Vec& u : sample_points(domain, opts.samples, mix_seed(opts.seed, 1))) {
      SamplePoint p;
      p.u = std::move(u);
      pts.push_back(std::move(p));
    }
  }

  Verdict verdict;
  GradNormStats& stats = verdict.report.gradnorm;
  const double kink_threshold = 100.0 * tol.tol_grad_norm;

  double norm_min = std::numeric_limits<double>::infinity();
  double norm_max = -std::numeric_limits<double>::infinity();
  double norm_sum = 0;
  int stable_count = 0;
  const SamplePoint* worst_unstable = nullptr;

  for (SamplePoint& p : pts) {
    p.f = field(p.u);
    if (!std::isfinite(p.f)) {
      throw NonFiniteError("classify_field: non-finite value at " + format_point(p.u), p.u);
    }
    try {
      p.grad = gradient(field, p.u);
    } catch (const NonFiniteError&) {
      ++stats.excluded;
      continue;
    }
    p.instability = instability_at(field, p.u, tol.fd_step);
    p.stable = p.instability <= kink_threshold;
    if (p.stable) {
      const double n = p.grad->norm();
      norm_min = std::min(norm_min, n);
      norm_max = std::max(norm_max, n);
      norm_sum += n;
      ++stable_count;
    } else {
      ++stats.unstable;
      if (!worst_unstable || p.instability > worst_unstable->instability) worst_unstable = &p;
    }
    ++stats.samples;
  }
  if (stable_count == 0 && stats.unstable == 0) {
    throw SolverError("classify_field: no sample produced a usable gradient");
  }

  if (stable_count > 0) {
    stats.min = norm_min;
    stats.max = norm_max;
    stats.mean = norm_sum / stable_count;
    stats.spread = norm_max - norm_min;
  }

  // Convexity scans over the precomputed samples.
  ConvexityStats& cvx = verdict.report.convexity;
  cvx.min_first_order_gap = std::numeric_limits<double>::infinity();
  cvx.min_monotonicity = std::numeric_limits<double>::infinity();
  for (const SamplePoint& a : pts) {
    if (!a.grad) continue;
    for (const SamplePoint& b : pts) {
      if (&a == &b) continue;
      const double gap = b.f - a.f - a.grad->dot(b.u - a.u);
      if (gap < cvx.min_first_order_gap) {
        cvx.min_first_order_gap = gap;
        cvx.gap_u = a.u;
        cvx.gap_v = b.u;
      }
      if (b.grad && &a < &b) {
        cvx.min_monotonicity =
            std::min(cvx.min_monotonicity, (*a.grad - *b.grad).dot(a.u - b.u));
      }
    }
  }

  // (1) Constant gradient norm? Spread is measured over FD-stable points;
  // unstable ones are handled by the differentiability step below.
  if (stable_count > 0 && stats.spread > 10.0 * tol.tol_grad_norm) {
    verdict.outcome = NotConstantNormVerdict{stats.spread, stats.min, stats.max, 0.0};
    return verdict;
  }

  // (2) FD-stability scan.
  if (worst_unstable) {
    verdict.outcome = NotDifferentiableVerdict{worst_unstable->u, worst_unstable->instability};
    return verdict;
  }

  // (3) First-order convexity scan.
  if (cvx.min_first_order_gap < -tol.tol_equal) {
    verdict.outcome = NotConvexVerdict{cvx.gap_u, cvx.gap_v, cvx.min_first_order_gap};
    return verdict;
  }

  // (4) Zero common norm: constant field.
  if (stats.mean <= tol.tol_grad_norm) {
    verdict.outcome = ConstantVerdict{field(domain.center())};
    return verdict;
  }

  // (5) Affine fit against fresh samples. When steps 1-3 pass exactly this
  // cannot fail; a residual breach is reported as a norm diagnostic.
  Vec c1 = Vec::Zero(field.dim);
  double c0 = 0;
  for (const SamplePoint& p : pts) {
    if (p.stable) c1 += *p.grad;
  }
  c1 /= stable_count;
  for (const SamplePoint& p : pts) {
    if (p.stable) c0 += p.f - c1.dot(p.u);
  }
  c0 /= stable_count;

  double max_residual = 0;
  for (const Vec& w : sample_points(domain, opts.samples, mix_seed(opts.seed, 2))) {
    const double fw = field(w);
    if (!std::isfinite(fw))
      throw NonFiniteError("classify_field: non-finite value at " + format_point(w), w);
    max_residual = std::max(max_residual, std::abs(fw - c1.dot(w) - c0));
  }
  if (max_residual <= tol.tol_equal) {
    verdict.outcome = AffineVerdict{std::move(c1), c0, max_residual};
  } else {
    verdict.outcome =
        NotConstantNormVerdict{stats.spread, stats.min, stats.max, max_residual};
  }
  return verdict;
}

Verdict run_witness(const ScalarField& field, const Domain& domain, const Tolerances& tol,
                    ClassifyMode mode, const WitnessOptions& opts) {
  Verdict verdict = classify_field(field, domain, tol, mode, opts.classify);
  const ScalarField probe = (mode == ClassifyMode::Concave) ? negate(field) : field;

  FixedPointOptions fp_opts;
  fp_opts.tol = tol;
  fp_opts.seed = opts.classify.seed;

  if (probe.claims.differentiable) {
    for (double r : opts.radii) {
      try {
        FixedPointRecord rec;
        rec.kind = "brouwer";
        rec.result = brouwer_fixed_point(probe, r, fp_opts);
        rec.sphere_gap = std::abs(rec.result.point.norm() - r);
        verdict.report.fixed_points.push_back(std::move(rec));
      } catch (const std::exception&) {
        // Field rejected the probe (for example a non-finite gradient);
        // the verdict itself already reflects the defect.
      }
      if (probe.claims.convex) {
        try {
          FixedPointRecord rec;
          rec.kind = "resolvent";
          rec.result = resolvent_point(probe, r, fp_opts);
          rec.sphere_gap = std::abs(rec.result.point.norm() - r);
          verdict.report.fixed_points.push_back(std::move(rec));
        } catch (const std::exception&) {
        }
      }
    }
  }

  const auto ray_bases =
      sample_points(domain, std::max(1, opts.ray_points), mix_seed(opts.classify.seed, 3));
  for (const Vec& base : ray_bases) {
    try {
      RayRecord rec;
      rec.base = base;
      rec.s_min = -opts.ray_span;
      rec.s_max = opts.ray_span;
      rec.samples = opts.ray_samples;
      rec.deviation = ray_deviation(probe, base, rec.s_min, rec.s_max, rec.samples);
      rec.gradient_drift = ray_gradient_drift(probe, base, rec.s_min, rec.s_max, rec.samples);
      verdict.report.rays.push_back(std::move(rec));
    } catch (const std::exception&) {
    }
  }

  const auto pair_pts =
      sample_points(domain, 2 * std::max(1, opts.line_pairs), mix_seed(opts.classify.seed, 4));
  for (int k = 0; k + 1 < static_cast<int>(pair_pts.size()); k += 2) {
    const Vec& u = pair_pts[static_cast<std::size_t>(k)];
    const Vec& v = pair_pts[static_cast<std::size_t>(k) + 1];
    try {
      verdict.report.line_gaps.push_back(line_pair_witness(probe, u, v, tol));
    } catch (const std::exception&) {
      try {
        // Retry with a norm-preserving reflection when the seeded pair
        // violates the equal-gradient-norm hypothesis.
        verdict.report.line_gaps.push_back(line_pair_witness(probe, u, Vec(-u), tol));
      } catch (const std::exception&) {
      }
    }
  }

  return verdict;
}

}  // namespace gradlab
