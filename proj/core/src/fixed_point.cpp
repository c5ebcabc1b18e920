#include "gradlab/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gradlab/rng.hpp"
#include "gradlab/sampling.hpp"

namespace gradlab {

namespace {

Vec clamp_to_ball(const Vec& u, double r) {
  const double n = u.norm();
  if (n <= r || n == 0) return u;
  return (r / n) * u;
}

double brouwer_residual(const ScalarField& field, const Vec& u, double r) {
  return (u - r * gradient(field, u)).norm();
}

struct BallSearch {
  Vec best;
  double best_residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// Picard sweep u <- clamp(r grad f(u)); cheap and lands exactly on affine
// fields, but the map need not contract, so it only seeds the minimization.
void picard_sweep(const ScalarField& field, double r, Vec u, double target, int budget,
                  BallSearch& search) {
  for (int i = 0; i < budget; ++i) {
    const double res = brouwer_residual(field, u, r);
    ++search.iterations;
    if (res < search.best_residual) {
      search.best_residual = res;
      search.best = u;
    }
    if (res <= target) return;
    u = clamp_to_ball(r * gradient(field, u), r);
  }
}

// Projected descent on Q(u) = |u - r grad f(u)|^2 with an FD gradient of Q
// and Armijo backtracking.
void descent_refine(const ScalarField& field, double r, double target, int budget,
                    BallSearch& search) {
  Vec u = search.best;
  double res = search.best_residual;
  const double h = 1e-7 * std::max(1.0, r);
  const int dim = field.dim;
  Vec grad_q(dim);
  int stall = 0;

  while (search.iterations < budget && res > target && stall < 3) {
    Vec probe = u;
    const double q0 = res * res;
    for (int i = 0; i < dim; ++i) {
      const double ui = u[i];
      probe[i] = ui + h;
      const double qp = std::pow(brouwer_residual(field, probe, r), 2);
      probe[i] = ui - h;
      const double qm = std::pow(brouwer_residual(field, probe, r), 2);
      probe[i] = ui;
      grad_q[i] = (qp - qm) / (2.0 * h);
      search.iterations += 2;
    }
    const double gn = grad_q.norm();
    if (!(gn > 0) || !std::isfinite(gn)) break;

    double alpha = std::max(res, 1e-3) / gn;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Vec trial = clamp_to_ball(u - alpha * grad_q, r);
      const double rt = brouwer_residual(field, trial, r);
      ++search.iterations;
      if (std::isfinite(rt) && rt * rt < q0 - 1e-4 * alpha * gn * gn) {
        u = std::move(trial);
        res = rt;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (moved) {
      stall = 0;
      if (res < search.best_residual) {
        search.best_residual = res;
        search.best = u;
      }
    } else {
      ++stall;
    }
  }
}

}  // namespace

FixedPointResult brouwer_fixed_point(const ScalarField& field, double r,
                                     const FixedPointOptions& opts) {
  if (!(r > 0)) throw std::invalid_argument("brouwer_fixed_point: r must be > 0");
  if (!field.claims.differentiable)
    throw std::invalid_argument("brouwer_fixed_point: field must claim differentiability");
  opts.tol.validate();

  const double target = opts.tol.tol_residual;
  BallSearch search;
  search.best = Vec::Zero(field.dim);

  std::vector<Vec> starts;
  starts.push_back(Vec::Zero(field.dim));
  if (opts.extra_starts > 0) {
    const Domain ball = Domain::ball(Vec::Zero(field.dim), r);
    auto seeded = sample_points(ball, opts.extra_starts, mix_seed(opts.seed, 0x62726f75ull));
    starts.insert(starts.end(), seeded.begin(), seeded.end());
  }

  const int picard_budget = std::min(200, opts.max_iters);
  for (const Vec& s : starts) {
    picard_sweep(field, r, s, target, picard_budget, search);
    if (search.best_residual <= target) break;
  }
  if (search.best_residual > target) {
    descent_refine(field, r, target, opts.max_iters, search);
  }

  FixedPointResult result;
  result.point = search.best;
  result.radius = r;
  result.residual = search.best_residual;
  result.iterations = search.iterations;
  result.converged = search.best_residual <= target;
  return result;
}

FixedPointResult resolvent_point(const ScalarField& field, double r,
                                 const FixedPointOptions& opts) {
  if (!(r > 0)) throw std::invalid_argument("resolvent_point: r must be > 0");
  if (!field.claims.convex || !field.claims.differentiable)
    throw std::invalid_argument(
        "resolvent_point: field must claim convexity and differentiability");
  opts.tol.validate();

  // Sampled Lipschitz estimate for grad f around the relevant scale.
  const double scope = std::max(1.0, 2.0 * r);
  const Domain ball = Domain::ball(Vec::Zero(field.dim), scope);
  const auto pts = sample_points(ball, 16, mix_seed(opts.seed, 0x6c697073ull));
  double lip = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec du = pts[i] - pts[i - 1];
    const double dn = du.norm();
    if (dn < 1e-9) continue;
    lip = std::max(lip, (gradient(field, pts[i]) - gradient(field, pts[i - 1])).norm() / dn);
  }
  lip *= 1.25;  // headroom over the sampled maximum

  const double tau = 1.0 / (1.0 + r * lip);
  const double target = opts.tol.tol_residual;

  auto iterate = [&](Vec u, int budget, int& used) {
    double res = std::numeric_limits<double>::infinity();
    for (used = 0; used < budget; ++used) {
      const Vec g = u + r * gradient(field, u);
      res = g.norm();
      if (res <= target) break;
      u -= tau * g;
    }
    return std::make_pair(std::move(u), res);
  };

  int it1 = 0;
  auto [p1, r1] = iterate(Vec::Zero(field.dim), opts.max_iters, it1);

  // Uniqueness check from a second start.
  const auto second = sample_points(Domain::ball(Vec::Zero(field.dim), std::max(r, 1.0)), 1,
                                    mix_seed(opts.seed, 0x72657332ull));
  int it2 = 0;
  auto [p2, r2] = iterate(second[0], opts.max_iters, it2);
  const bool unique = (p1 - p2).norm() <= std::max(opts.tol.tol_equal, 10 * target);

  FixedPointResult result;
  result.point = std::move(p1);
  result.radius = r;
  result.residual = r1;
  result.iterations = it1 + it2;
  result.converged = r1 <= target && r2 <= target && unique;
  return result;
}

Vec limit_direction(const ScalarField& field, const std::vector<double>& radii,
                    FixedPointKind kind, const FixedPointOptions& opts,
                    LimitDirectionTrace* trace) {
  if (radii.empty()) throw std::invalid_argument("limit_direction: radii must be non-empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw std::invalid_argument("limit_direction: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("limit_direction: radii must be strictly decreasing");
  }
  if (!(radii.back() <= 1e-3))
    throw std::invalid_argument("limit_direction: last radius must be <= 1e-3");

  Vec direction;
  for (double r : radii) {
    FixedPointResult fp = (kind == FixedPointKind::Brouwer)
                              ? brouwer_fixed_point(field, r, opts)
                              : resolvent_point(field, r, opts);
    if (!fp.converged) {
      throw SolverError("limit_direction: fixed-point solve did not converge at r = " +
                        std::to_string(r));
    }
    direction = (kind == FixedPointKind::Brouwer) ? Vec(fp.point / r) : Vec(-fp.point / r);
    if (trace) {
      trace->fixed_points.push_back(std::move(fp));
      trace->directions.push_back(direction);
    }
  }
  return direction;
}

}  // namespace gradlab
