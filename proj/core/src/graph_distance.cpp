#include "gradlab/graph_distance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gradlab/rng.hpp"

namespace gradlab {

GraphSpec make_parabola_graph() {
  GraphSpec g;
  g.ambient_dim = 2;
  g.g = [](const Vec& x) { return x[0] * x[0]; };
  g.dg = [](const Vec& x) -> Vec {
    Vec d(1);
    d[0] = 2.0 * x[0];
    return d;
  };
  g.label = "parabola";
  return g;
}

namespace {

// Inner Newton target; the public contract only promises tol_residual but
// criterion-grade agreement with the closed form needs more headroom.
constexpr double kInnerResidual = 1e-12;

struct SolveWorkspace {
  Vec dg, s, sp, sm, xp, x, trial, st, best_x;
  Eigen::MatrixXd jac;
  Vec step;

  explicit SolveWorkspace(int m)
      : dg(m), s(m), sp(m), sm(m), xp(m), x(m), trial(m), st(m), best_x(m), jac(m, m), step(m) {}
};

void graph_gradient_into(const GraphSpec& graph, const Vec& x, Vec& out) {
  if (graph.dg) {
    out = graph.dg(x);
    return;
  }
  const double fd_step = 1e-7;
  Vec& probe = out;  // reuse: filled column by column below
  static thread_local Vec scratch;
  scratch = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    scratch[i] = xi + fd_step;
    const double fp = graph.g(scratch);
    scratch[i] = xi - fd_step;
    const double fm = graph.g(scratch);
    scratch[i] = xi;
    probe[i] = (fp - fm) / (2.0 * fd_step);
  }
}

// Stationarity system S_k(x) = (g(x) - u_n) D_k g(x) + x_k - u_k.
double stationarity_into(const GraphSpec& graph, const Vec& x, const Vec& u, Vec& dg, Vec& s) {
  const int m = static_cast<int>(x.size());
  const double gap = graph.g(x) - u[m];
  graph_gradient_into(graph, x, dg);
  double worst = 0;
  for (int k = 0; k < m; ++k) {
    s[k] = gap * dg[k] + x[k] - u[k];
    worst = std::max(worst, std::abs(s[k]));
  }
  return worst;
}

double squared_distance(const GraphSpec& graph, const Vec& x, const Vec& u) {
  const int m = static_cast<int>(x.size());
  const double gap = graph.g(x) - u[m];
  double q = gap * gap;
  for (int k = 0; k < m; ++k) q += (x[k] - u[k]) * (x[k] - u[k]);
  return q;
}

struct Candidate {
  Vec x;
  double sq_value = 0;
  double residual = 0;
};

// Damped Newton on S(x) = 0 with an FD Jacobian; falls back to descent on
// the squared distance when a Newton step fails to reduce |S|.
bool solve_from_start(const GraphSpec& graph, const Vec& u, const Vec& start,
                      const ProjectionOptions& opts, SolveWorkspace& w, Candidate& out) {
  const int m = static_cast<int>(start.size());
  const double jac_step = 1e-7;
  const double target = std::min(kInnerResidual, 0.1 * opts.tol_residual);

  w.x = start;
  double best = stationarity_into(graph, w.x, u, w.dg, w.s);

  for (int iter = 0; iter < opts.max_iters && best > target; ++iter) {
    for (int j = 0; j < m; ++j) {
      w.xp = w.x;
      w.xp[j] += jac_step;
      stationarity_into(graph, w.xp, u, w.dg, w.sp);
      w.xp[j] = w.x[j] - jac_step;
      stationarity_into(graph, w.xp, u, w.dg, w.sm);
      w.jac.col(j) = (w.sp - w.sm) / (2.0 * jac_step);
    }
    if (m == 1) {
      const double d = w.jac(0, 0);
      if (d == 0.0) {
        w.step[0] = -w.s[0];
      } else {
        w.step[0] = -w.s[0] / d;
      }
    } else {
      w.step = w.jac.fullPivLu().solve(-w.s);
    }
    if (!all_finite(w.step)) break;

    // Backtrack on |S|_inf.
    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      w.trial = w.x + lambda * w.step;
      const double r = stationarity_into(graph, w.trial, u, w.dg, w.st);
      if (std::isfinite(r) && r < best) {
        w.x.swap(w.trial);
        w.s.swap(w.st);
        best = r;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      // Descent fallback: -S is the negative gradient of the squared
      // distance up to a factor of 2.
      const double q0 = squared_distance(graph, w.x, u);
      double alpha = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 40; ++bt) {
        w.trial = w.x - alpha * w.s;
        const double q = squared_distance(graph, w.trial, u);
        if (std::isfinite(q) && q < q0) {
          w.x.swap(w.trial);
          best = stationarity_into(graph, w.x, u, w.dg, w.s);
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
  }

  if (!all_finite(w.x) || !std::isfinite(best)) return false;
  out.x = w.x;
  out.residual = best;
  out.sq_value = squared_distance(graph, w.x, u);
  return true;
}

}  // namespace

ProjectionResult project_to_graph(const GraphSpec& graph, const Vec& u,
                                  const ProjectionOptions& opts) {
  const int n = graph.ambient_dim;
  if (n < 2) throw std::invalid_argument("project_to_graph: ambient_dim must be >= 2");
  if (static_cast<int>(u.size()) != n)
    throw DimensionError("project_to_graph: query dimension mismatch");
  const int m = n - 1;

  SolveWorkspace w(m);
  const CounterRng rng(mix_seed(opts.seed, 0x70726f6aull));
  const double scale = std::max(1.0, u.norm());

  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(opts.extra_starts) + 1);
  Vec start = u.head(m);
  for (int p = -1; p < opts.extra_starts; ++p) {
    if (p >= 0) {
      start = u.head(m);
      for (int j = 0; j < m; ++j) {
        start[j] += scale * rng.uniform(static_cast<std::uint64_t>(p) * m + j, -1.5, 1.5);
      }
    }
    Candidate c;
    if (solve_from_start(graph, u, start, opts, w, c) && c.residual <= opts.tol_residual) {
      candidates.push_back(std::move(c));
    }
  }
  if (candidates.empty()) {
    throw SolverError("project_to_graph: no start converged below tol_residual at " +
                      format_point(u));
  }

  // Keep stationary points whose value ties the best; the rest are saddle
  // points or worse minima reached from other starts.
  const double best_sq =
      std::min_element(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return a.sq_value < b.sq_value;
      })->sq_value;
  const double best_value = std::sqrt(best_sq);
  std::vector<Candidate> ties;
  for (auto& c : candidates) {
    if (std::sqrt(c.sq_value) <= best_value + opts.tol_equal) ties.push_back(std::move(c));
  }
  std::sort(ties.begin(), ties.end(), [](const Candidate& a, const Candidate& b) {
    for (Eigen::Index i = 0; i < a.x.size(); ++i) {
      if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
    }
    return false;
  });

  // Distinct tied minimizers mean an ambiguous projection (medial axis).
  // The separation threshold tolerates solver scatter around flat minima.
  const double cluster_sep = std::max(opts.tol_equal, 1e-6);
  bool multiple = false;
  for (std::size_t i = 1; i < ties.size(); ++i) {
    if ((ties[i].x - ties[0].x).norm() > cluster_sep) {
      multiple = true;
      break;
    }
  }

  const Candidate& chosen = ties.front();
  ProjectionResult result;
  result.minimizer = chosen.x;
  result.foot = Vec(n);
  result.foot.head(m) = chosen.x;
  result.foot[m] = graph.g(chosen.x);
  result.value = (result.foot - u).norm();
  result.stationarity_residual = chosen.residual;
  result.multiple = multiple;
  return result;
}

FieldSample evaluate_distance_field(const GraphSpec& graph, const Vec& u,
                                    const Tolerances& tol) {
  tol.validate();
  ProjectionOptions opts;
  opts.tol_residual = tol.tol_residual;
  opts.tol_equal = tol.tol_equal;
  ProjectionResult pr = project_to_graph(graph, u, opts);
  if (pr.value <= tol.singular_margin) {
    throw OnGraphError("evaluate_distance_field: query on the graph (value " +
                           std::to_string(pr.value) + ")",
                       u);
  }
  if (pr.multiple) {
    throw AmbiguousProjectionError(
        "evaluate_distance_field: ambiguous projection (medial axis) at " + format_point(u));
  }
  FieldSample sample;
  sample.value = pr.value;
  sample.grad = (u - pr.foot) / pr.value;
  sample.projection = std::move(pr);
  return sample;
}

double parabola_discriminant(const Vec& u) {
  if (u.size() != 2) throw DimensionError("parabola_discriminant: dim 2 required");
  const double a = 0.5 - u[1];
  return u[0] * u[0] / 16.0 + a * a * a / 27.0;
}

namespace {
// Positivity floor for the closed form; far tighter than the diagnostic
// classification margin.
constexpr double kDiscriminantFloor = 1e-9;

double cubic(double x, double p, double q) { return x * x * x + p * x + q; }
}  // namespace

double parabola_projection(const Vec& u) {
  const double d = parabola_discriminant(u);
  if (!(d > kDiscriminantFloor)) {
    throw DiscriminantNotPositive("parabola_projection: discriminant " + std::to_string(d) +
                                  " not positive at " + format_point(u));
  }
  const double sq = std::sqrt(d);
  // std::cbrt takes the real branch for negative arguments.
  double x = std::cbrt(u[0] / 4.0 + sq) + std::cbrt(u[0] / 4.0 - sq);

  // Newton polish; the raw closed form loses digits when the two cube-root
  // arguments nearly cancel.
  const double p = 0.5 - u[1];
  const double q = -u[0] / 2.0;
  for (int i = 0; i < 3; ++i) {
    const double f = cubic(x, p, q);
    const double df = 3.0 * x * x + p;
    if (f == 0.0 || df == 0.0) break;
    const double next = x - f / df;
    if (!std::isfinite(next) || std::abs(cubic(next, p, q)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

const char* to_string(SingularClass c) {
  switch (c) {
    case SingularClass::OnGraph: return "OnGraph";
    case SingularClass::MultiRoot: return "MultiRoot";
    case SingularClass::CuspCondition: return "CuspCondition";
    case SingularClass::Regular: return "Regular";
  }
  return "Unknown";
}

SingularClass classify_singularity(const Vec& u, const Tolerances& tol) {
  if (u.size() != 2) throw DimensionError("classify_singularity: dim 2 required");
  tol.validate();
  static const GraphSpec parabola = make_parabola_graph();
  ProjectionOptions opts;
  opts.tol_residual = tol.tol_residual;
  opts.tol_equal = tol.tol_equal;
  const ProjectionResult pr = project_to_graph(parabola, u, opts);
  if (pr.value <= tol.singular_margin) return SingularClass::OnGraph;
  const double d = parabola_discriminant(u);
  if (d <= tol.singular_margin) return SingularClass::MultiRoot;
  if (std::abs(std::abs(u[0]) - 4.0 * std::sqrt(d)) <= tol.singular_margin)
    return SingularClass::CuspCondition;
  return SingularClass::Regular;
}

}  // namespace gradlab
