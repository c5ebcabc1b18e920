#include "gradlab/zoo.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "gradlab/graph_distance.hpp"

namespace gradlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, sep)) parts.push_back(tok);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_numbers(const std::string& group, const std::string& spec) {
  std::vector<double> out;
  for (const std::string& tok : split(group, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("make_zoo_field: bad number '" + tok + "' in spec '" + spec +
                                  "'");
    }
  }
  return out;
}

double require_scalar(const std::vector<std::string>& groups, std::size_t idx, double fallback,
                      const std::string& spec) {
  if (groups.size() <= idx || groups[idx].empty()) return fallback;
  const auto nums = parse_numbers(groups[idx], spec);
  if (nums.size() != 1)
    throw std::invalid_argument("make_zoo_field: expected one number in '" + groups[idx] + "'");
  return nums[0];
}

int resolve_dim(int requested, int fallback = 2) {
  if (requested < 0) throw std::invalid_argument("make_zoo_field: dim must be positive");
  return requested == 0 ? fallback : requested;
}

ScalarField affine_field(Vec c1, double c0) {
  ScalarField f;
  f.dim = static_cast<int>(c1.size());
  f.label = "affine";
  f.claims = {true, true};
  f.eval = [c1, c0](const Vec& u) { return c1.dot(u) + c0; };
  f.grad_mode = AnalyticGrad{[c1](const Vec&) { return c1; }};
  return f;
}

}  // namespace

ScalarField make_zoo_field(const std::string& spec, int dim) {
  const auto groups = split(spec, ':');
  if (groups.empty() || groups[0].empty())
    throw std::invalid_argument("make_zoo_field: empty spec");
  const std::string& name = groups[0];

  if (name == "affine") {
    if (groups.size() < 2 || groups[1].empty())
      throw std::invalid_argument("make_zoo_field: affine needs c1, e.g. affine:0.6,0.8:1.0");
    const auto c1v = parse_numbers(groups[1], spec);
    const double c0 = require_scalar(groups, 2, 0.0, spec);
    Vec c1(static_cast<Eigen::Index>(c1v.size()));
    for (std::size_t i = 0; i < c1v.size(); ++i) c1[static_cast<Eigen::Index>(i)] = c1v[i];
    if (dim != 0 && dim != static_cast<int>(c1.size()))
      throw DimensionError("make_zoo_field: affine c1 has dim " + std::to_string(c1.size()) +
                           " but dim " + std::to_string(dim) + " was requested");
    return affine_field(std::move(c1), c0);
  }

  if (name == "constant") {
    const double c0 = require_scalar(groups, 1, 0.0, spec);
    const int d = resolve_dim(dim);
    ScalarField f = affine_field(Vec::Zero(d), c0);
    f.label = "constant";
    return f;
  }

  if (name == "norm") {
    const double c0 = require_scalar(groups, 1, 0.0, spec);
    const int d = resolve_dim(dim);
    ScalarField f;
    f.dim = d;
    f.label = "norm";
    f.claims = {true, false};  // convex, kinked at the origin
    f.eval = [c0](const Vec& u) { return u.norm() + c0; };
    f.grad_mode = FiniteDifferenceGrad{};
    return f;
  }

  if (name == "smoothed_norm") {
    const double eps = require_scalar(groups, 1, 0.1, spec);
    const double c0 = require_scalar(groups, 2, 0.0, spec);
    if (!(eps > 0)) throw std::invalid_argument("make_zoo_field: smoothed_norm needs eps > 0");
    const int d = resolve_dim(dim);
    ScalarField f;
    f.dim = d;
    f.label = "smoothed_norm";
    f.claims = {true, true};
    f.eval = [eps, c0](const Vec& u) { return std::sqrt(eps * eps + u.squaredNorm()) + c0; };
    f.grad_mode = AnalyticGrad{[eps](const Vec& u) -> Vec {
      return u / std::sqrt(eps * eps + u.squaredNorm());
    }};
    return f;
  }

  if (name == "sqrt_quadratic") {
    const int d = resolve_dim(dim);
    ScalarField f;
    f.dim = d;
    f.label = "sqrt_quadratic";
    f.claims = {true, true};
    f.eval = [](const Vec& u) { return std::sqrt(1.0 + u.squaredNorm()); };
    f.grad_mode =
        AnalyticGrad{[](const Vec& u) -> Vec { return u / std::sqrt(1.0 + u.squaredNorm()); }};
    return f;
  }

  if (name == "quadratic") {
    if (groups.size() < 2 || groups[1].empty())
      throw std::invalid_argument("make_zoo_field: quadratic needs row-major entries");
    const auto entries = parse_numbers(groups[1], spec);
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(entries.size()))));
    if (d * d != static_cast<int>(entries.size()))
      throw std::invalid_argument("make_zoo_field: quadratic needs n*n entries");
    if (dim != 0 && dim != d)
      throw DimensionError("make_zoo_field: quadratic matrix is " + std::to_string(d) + "x" +
                           std::to_string(d) + " but dim " + std::to_string(dim) +
                           " was requested");
    Eigen::MatrixXd raw(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) raw(i, j) = entries[static_cast<std::size_t>(i) * d + j];
    Eigen::MatrixXd q = 0.5 * (raw + raw.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, q.norm()))
      throw std::invalid_argument("make_zoo_field: quadratic matrix is not PSD");
    ScalarField f;
    f.dim = d;
    f.label = "quadratic";
    f.claims = {true, true};
    f.eval = [q](const Vec& u) { return 0.5 * u.dot(q * u); };
    f.grad_mode = AnalyticGrad{[q](const Vec& u) -> Vec { return q * u; }};
    return f;
  }

  if (name == "parabola_distance") {
    if (dim != 0 && dim != 2)
      throw DimensionError("make_zoo_field: parabola_distance is 2-D only");
    auto graph = std::make_shared<GraphSpec>(make_parabola_graph());
    ScalarField f;
    f.dim = 2;
    f.label = "parabola_distance";
    f.claims = {false, false};
    f.eval = [graph](const Vec& u) { return project_to_graph(*graph, u).value; };
    // Projection-identity gradient; NaN on the graph or the medial axis,
    // where no single foot point exists.
    f.grad_mode = AnalyticGrad{[graph](const Vec& u) -> Vec {
      const ProjectionResult pr = project_to_graph(*graph, u);
      if (pr.value <= 0 || pr.multiple) {
        return Vec::Constant(2, std::numeric_limits<double>::quiet_NaN());
      }
      return (u - pr.foot) / pr.value;
    }};
    return f;
  }

  throw std::invalid_argument("make_zoo_field: unknown spec '" + name + "'");
}

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> entries = {
      {"affine", "affine:<c1 list>:<c0>", "f(u) = <c1,u> + c0; convex, differentiable"},
      {"constant", "constant:<c0>", "f(u) = c0; convex, differentiable"},
      {"norm", "norm:<c0>", "f(u) = |u| + c0; convex, not differentiable at 0"},
      {"smoothed_norm", "smoothed_norm:<eps>:<c0>",
       "f(u) = sqrt(eps^2 + |u|^2) + c0; convex, differentiable, |grad| < 1"},
      {"sqrt_quadratic", "sqrt_quadratic", "f(u) = sqrt(1 + |u|^2); convex, differentiable"},
      {"quadratic", "quadratic:<row-major Q>", "f(u) = u^T Q u / 2 with Q PSD; convex"},
      {"parabola_distance", "parabola_distance",
       "2-D distance to the graph of x^2; non-convex, singular on the graph"},
  };
  return entries;
}

}  // namespace gradlab
