#pragma once

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <variant>

namespace gradlab {

/// Dimension-generic point/vector in R^n.
using Vec = Eigen::VectorXd;

inline Vec vec_of(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }

std::string format_point(const Vec& u);

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An evaluation (function value or gradient) came back NaN/Inf.
struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what, Vec where = Vec())
      : std::runtime_error(what), point(std::move(where)) {}
  Vec point;
};

/// An iterative solver exhausted its budget without meeting its tolerance.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical knobs shared across the library. All strictly positive.
struct Tolerances {
  double tol_grad_norm = 1e-6;   // |grad| comparisons, e.g. the unit-norm law
  double tol_residual = 1e-8;    // stationarity / fixed-point residuals
  double tol_equal = 1e-8;       // value agreement, minimizer clustering
  double fd_step = 1e-5;         // central-difference step
  double singular_margin = 1e-3; // diagnostic classification margin

  void validate() const {
    if (!(tol_grad_norm > 0) || !(tol_residual > 0) || !(tol_equal > 0) ||
        !(fd_step > 0) || !(singular_margin > 0)) {
      throw std::invalid_argument("Tolerances: all fields must be strictly positive");
    }
  }
};

struct Box {
  Vec lo, hi;
};

struct Ball {
  Vec center;
  double radius = 1.0;
};

/// Sampling region: an axis-aligned box or a closed ball.
class Domain {
 public:
  explicit Domain(Box b) : kind_(std::move(b)) { check(); }
  explicit Domain(Ball b) : kind_(std::move(b)) { check(); }

  static Domain box(Vec lo, Vec hi) { return Domain(Box{std::move(lo), std::move(hi)}); }
  static Domain ball(Vec center, double radius) {
    return Domain(Ball{std::move(center), radius});
  }

  int dim() const {
    if (const Box* b = std::get_if<Box>(&kind_)) return static_cast<int>(b->lo.size());
    return static_cast<int>(std::get<Ball>(kind_).center.size());
  }

  Vec center() const {
    if (const Box* b = std::get_if<Box>(&kind_)) return 0.5 * (b->lo + b->hi);
    return std::get<Ball>(kind_).center;
  }

  bool contains(const Vec& u, double slack = 1e-12) const {
    if (u.size() != dim()) return false;
    if (const Box* b = std::get_if<Box>(&kind_)) {
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (u[i] < b->lo[i] - slack || u[i] > b->hi[i] + slack) return false;
      }
      return true;
    }
    const Ball& s = std::get<Ball>(kind_);
    return (u - s.center).norm() <= s.radius + slack;
  }

  /// Smallest extent (box side or radius); used to reject degenerate domains.
  double min_extent() const {
    if (const Box* b = std::get_if<Box>(&kind_)) return (b->hi - b->lo).minCoeff();
    return std::get<Ball>(kind_).radius;
  }

  bool is_box() const { return std::holds_alternative<Box>(kind_); }
  const Box& as_box() const { return std::get<Box>(kind_); }
  const Ball& as_ball() const { return std::get<Ball>(kind_); }

 private:
  void check() const {
    if (const Box* b = std::get_if<Box>(&kind_)) {
      if (b->lo.size() == 0 || b->lo.size() != b->hi.size())
        throw DimensionError("Domain: box lo/hi dimension mismatch");
      if (((b->hi - b->lo).array() <= 0).any())
        throw std::invalid_argument("Domain: box requires lo < hi componentwise");
      return;
    }
    const Ball& s = std::get<Ball>(kind_);
    if (s.center.size() == 0) throw DimensionError("Domain: ball center is empty");
    if (!(s.radius > 0)) throw std::invalid_argument("Domain: ball radius must be > 0");
  }

  std::variant<Box, Ball> kind_;
};

}  // namespace gradlab
