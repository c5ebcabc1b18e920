#pragma once

#include <string>
#include <vector>

#include "gradlab/field.hpp"

namespace gradlab {

/// Build a test field from a colon-delimited spec token, e.g.
///   "affine:0.6,0.8:1.0"      f(u) = <c1,u> + c0, dim from c1
///   "constant:2.5"            f(u) = c0
///   "norm:0"                  f(u) = |u| + c0          (not differentiable)
///   "smoothed_norm:0.1:0"     f(u) = sqrt(eps^2+|u|^2) + c0
///   "sqrt_quadratic"          f(u) = sqrt(1+|u|^2)
///   "quadratic:1,0,0,1"       f(u) = 0.5 u^T Q u, Q row-major PSD
///   "parabola_distance"       2-D distance to the graph of x^2
/// `dim` fixes the dimension for specs that do not encode it (0 keeps the
/// default of 2). Claims flags are set to match the construction.
ScalarField make_zoo_field(const std::string& spec, int dim = 0);

struct ZooEntry {
  std::string name;
  std::string syntax;
  std::string notes;
};

/// Catalog of available specs, for the CLI `zoo` listing.
const std::vector<ZooEntry>& zoo_catalog();

}  // namespace gradlab
