#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "gradlab/types.hpp"

namespace gradlab {

/// The graph of a smooth g: R^(n-1) -> R embedded in R^n as (x, g(x)).
struct GraphSpec {
  int ambient_dim = 2;                   // n >= 2
  std::function<double(const Vec&)> g;   // R^(n-1) -> R
  std::function<Vec(const Vec&)> dg;     // optional analytic gradient of g
  std::string label;
};

/// g(x) = x^2 in the plane.
GraphSpec make_parabola_graph();

struct ProjectionOptions {
  int extra_starts = 8;    // seeded perturbations besides the drop-last start
  int max_iters = 100;     // per start
  std::uint64_t seed = 0;
  double tol_residual = 1e-8;
  double tol_equal = 1e-8;
};

/// Nearest point (x*, g(x*)) to a query u, found by multi-start damped
/// Newton on the stationarity system with a descent fallback.
struct ProjectionResult {
  Vec minimizer;                      // x* in R^(n-1)
  Vec foot;                           // (x*, g(x*)) in R^n
  double value = 0;                   // |foot - u|
  double stationarity_residual = 0;   // max_k |(g(x*)-u_n) D_k g(x*) + x*_k - u_k|
  bool multiple = false;              // another minimizer with equal value detected
};

struct OnGraphError : std::runtime_error {
  explicit OnGraphError(const std::string& what, Vec where = Vec())
      : std::runtime_error(what), point(std::move(where)) {}
  Vec point;
};

struct AmbiguousProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiscriminantNotPositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProjectionResult project_to_graph(const GraphSpec& graph, const Vec& u,
                                  const ProjectionOptions& opts = {});

/// Distance value plus the gradient assembled from the projection identity
/// grad = (u - foot)/value; unit norm whenever the projection is unique.
struct FieldSample {
  double value = 0;
  Vec grad;
  ProjectionResult projection;
};

/// Throws OnGraphError when value <= singular_margin and
/// AmbiguousProjectionError when the projection is not unique.
FieldSample evaluate_distance_field(const GraphSpec& graph, const Vec& u,
                                    const Tolerances& tol = {});

/// D(u) = u1^2/16 + (1/2 - u2)^3 / 27; positive iff the stationarity cubic
/// x^3 + (1/2 - u2) x - u1/2 = 0 has exactly one real root.
double parabola_discriminant(const Vec& u);

/// Closed-form real root cbrt(u1/4 + sqrt(D)) + cbrt(u1/4 - sqrt(D)),
/// polished by Newton on the cubic. Requires D(u) above a small floor.
double parabola_projection(const Vec& u);

enum class SingularClass { OnGraph, MultiRoot, CuspCondition, Regular };

const char* to_string(SingularClass c);

/// Diagnostic classification for the parabola distance field:
/// OnGraph when the projected distance is within the margin, MultiRoot when
/// D(u) <= margin, CuspCondition when |u1| is within the margin of
/// 4 sqrt(D(u)), else Regular.
SingularClass classify_singularity(const Vec& u, const Tolerances& tol = {});

}  // namespace gradlab
