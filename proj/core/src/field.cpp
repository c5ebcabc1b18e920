#include "gradlab/field.hpp"

#include <sstream>

namespace gradlab {

std::string format_point(const Vec& u) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (i) os << ", ";
    os << u[i];
  }
  os << ")";
  return os.str();
}

double ScalarField::operator()(const Vec& u) const {
  if (static_cast<int>(u.size()) != dim) {
    throw DimensionError("ScalarField '" + label + "': expected dim " + std::to_string(dim) +
                         ", got " + std::to_string(u.size()));
  }
  return eval(u);
}

ScalarField negate(const ScalarField& f) {
  ScalarField g = f;
  g.label = "-(" + f.label + ")";
  auto inner = f.eval;
  g.eval = [inner](const Vec& u) { return -inner(u); };
  if (const auto* an = std::get_if<AnalyticGrad>(&f.grad_mode)) {
    auto gfn = an->fn;
    g.grad_mode = AnalyticGrad{[gfn](const Vec& u) -> Vec { return -gfn(u); }};
  }
  return g;
}

Vec fd_gradient(const ScalarField& field, const Vec& u, double step) {
  if (!(step > 0)) throw std::invalid_argument("fd_gradient: step must be > 0");
  if (static_cast<int>(u.size()) != field.dim)
    throw DimensionError("fd_gradient: dimension mismatch");
  Vec grad(u.size());
  Vec probe = u;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double ui = u[i];
    probe[i] = ui + step;
    const double fp = field.eval(probe);
    probe[i] = ui - step;
    const double fm = field.eval(probe);
    probe[i] = ui;
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw NonFiniteError("fd_gradient: non-finite evaluation near " + format_point(u), u);
    }
    grad[i] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

Vec gradient(const ScalarField& field, const Vec& u) {
  if (static_cast<int>(u.size()) != field.dim)
    throw DimensionError("gradient: dimension mismatch for field '" + field.label + "'");
  if (!all_finite(u)) throw NonFiniteError("gradient: query point is not finite", u);
  if (const auto* an = std::get_if<AnalyticGrad>(&field.grad_mode)) {
    Vec g = an->fn(u);
    if (static_cast<int>(g.size()) != field.dim)
      throw DimensionError("gradient: analytic gradient has wrong dimension");
    if (!all_finite(g))
      throw NonFiniteError("gradient: non-finite analytic gradient at " + format_point(u), u);
    return g;
  }
  return fd_gradient(field, u, std::get<FiniteDifferenceGrad>(field.grad_mode).step);
}

}  // namespace gradlab
