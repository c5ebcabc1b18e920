#pragma once

#include <string>

#include "gradlab/classify.hpp"

namespace gradlab {

/// Serialize a verdict with its witness report as a single JSON document
/// with stable field names: gradnorm{min,max,mean,spread}, fixed_points[],
/// rays[], line_gaps[], convexity{min_first_order_gap,min_monotonicity},
/// verdict{kind,params,evidence}.
std::string to_json(const Verdict& verdict, int indent = 2);

}  // namespace gradlab
