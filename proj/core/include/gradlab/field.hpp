#pragma once

#include <functional>
#include <string>
#include <variant>

#include "gradlab/types.hpp"

namespace gradlab {

struct AnalyticGrad {
  std::function<Vec(const Vec&)> fn;
};

struct FiniteDifferenceGrad {
  double step = 1e-5;
};

using GradMode = std::variant<AnalyticGrad, FiniteDifferenceGrad>;

/// What the field is claimed to be; verdicts are checked against these.
struct FieldClaims {
  bool convex = false;
  bool differentiable = true;
};

/// A differentiable scalar field f: R^dim -> R with its gradient mode.
struct ScalarField {
  int dim = 0;
  std::function<double(const Vec&)> eval;
  GradMode grad_mode = FiniteDifferenceGrad{};
  FieldClaims claims;
  std::string label;

  bool has_analytic_gradient() const { return std::holds_alternative<AnalyticGrad>(grad_mode); }

  /// Dimension-checked evaluation.
  double operator()(const Vec& u) const;
};

/// f with flipped sign (analytic gradients are negated as well).
ScalarField negate(const ScalarField& f);

/// Central finite differences with the given step; exact on affine fields.
Vec fd_gradient(const ScalarField& field, const Vec& u, double step);

/// Analytic gradient when available, otherwise central differences with the
/// field's configured step. Throws NonFiniteError if the result (or any
/// stencil evaluation) is not finite.
Vec gradient(const ScalarField& field, const Vec& u);

}  // namespace gradlab
