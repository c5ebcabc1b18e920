#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gradlab/field.hpp"
#include "gradlab/fixed_point.hpp"
#include "gradlab/proof.hpp"

namespace gradlab {

struct GradNormStats {
  double min = 0, max = 0, mean = 0, spread = 0;
  int samples = 0;    // points with a finite gradient
  int excluded = 0;   // points whose gradient evaluation failed
  int unstable = 0;   // points flagged by the FD-stability probe
};

struct FixedPointRecord {
  std::string kind;  // "brouwer" | "resolvent"
  FixedPointResult result;
  double sphere_gap = 0;  // | |p| - r |
};

struct RayRecord {
  Vec base;
  double s_min = 0, s_max = 0;
  int samples = 0;
  double deviation = 0;
  double gradient_drift = 0;
};

struct ConvexityStats {
  double min_first_order_gap = 0;
  double min_monotonicity = 0;
  Vec gap_u, gap_v;  // argmin pair of the first-order scan
};

/// Per-proof-step numerical outcomes gathered while probing a field.
struct WitnessReport {
  GradNormStats gradnorm;
  std::vector<FixedPointRecord> fixed_points;
  std::vector<RayRecord> rays;
  std::vector<LinePairReport> line_gaps;
  ConvexityStats convexity;
};

struct AffineVerdict {
  Vec c1;
  double c0 = 0;
  double max_residual = 0;  // max |f - <c1,u> - c0| over fresh samples
};

struct ConstantVerdict {
  double c0 = 0;
};

struct NotConstantNormVerdict {
  double spread = 0, min = 0, max = 0;
  double affine_residual = 0;  // nonzero when the affine fit failed instead
};

struct NotConvexVerdict {
  Vec u, v;
  double gap = 0;
};

struct NotDifferentiableVerdict {
  Vec point;
  double evidence = 0;  // FD instability magnitude at the flagged point
};

using VerdictOutcome = std::variant<AffineVerdict, ConstantVerdict, NotConstantNormVerdict,
                                    NotConvexVerdict, NotDifferentiableVerdict>;

enum class VerdictKind { Affine, Constant, NotConstantNorm, NotConvex, NotDifferentiable };

const char* to_string(VerdictKind k);

struct Verdict {
  VerdictOutcome outcome;
  WitnessReport report;

  VerdictKind kind() const { return static_cast<VerdictKind>(outcome.index()); }

  /// True when the verdict contradicts the field's claims flags
  /// (claim checks for convexity apply in convex mode only).
  bool contradicts(const FieldClaims& claims, bool convex_mode = true) const;
};

enum class ClassifyMode { Convex, Concave };

struct ClassifyOptions {
  int samples = 100;       // seeded points in addition to the domain center
  std::uint64_t seed = 0;
};

/// Classification pipeline: gradient-norm spread, FD-stability scan,
/// first-order convexity scan, zero-norm constant case, affine fit with a
/// fresh-sample residual check. Concave mode classifies -f and negates the
/// recovered parameters.
Verdict classify_field(const ScalarField& field, const Domain& domain,
                       const Tolerances& tol = {}, ClassifyMode mode = ClassifyMode::Convex,
                       const ClassifyOptions& opts = {});

struct WitnessOptions {
  std::vector<double> radii = {1.0, 0.1, 0.01, 0.001};
  int ray_points = 3;       // seeded ray-identity base points
  int line_pairs = 3;       // seeded gradient-line pairs
  double ray_span = 10.0;   // s in [-span, span]
  int ray_samples = 101;
  ClassifyOptions classify;
};

/// Full proof-step probe: fixed points per radius (Brouwer and, for convex
/// claims, resolvent), ray identities, line gaps, convexity scans, and the
/// final verdict; everything lands in the attached WitnessReport.
Verdict run_witness(const ScalarField& field, const Domain& domain,
                    const Tolerances& tol = {}, ClassifyMode mode = ClassifyMode::Convex,
                    const WitnessOptions& opts = {});

}  // namespace gradlab
