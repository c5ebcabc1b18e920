#pragma once

#include <string>
#include <vector>

#include "gradlab/graph_distance.hpp"

namespace gradlab {

/// Regular 2-D scan grid. Records run row-major with row 0 at max u2
/// (top), u1 ascending within a row; PGM pixels use the same order.
struct GridSpec {
  double lo1 = -2, lo2 = -2, hi1 = 2, hi2 = 2;
  int nx = 2, ny = 2;
};

struct GridRecord {
  double u1 = 0, u2 = 0;
  double value = 0;
  double gradnorm = 0;  // NaN where the gradient is undefined
  SingularClass cls = SingularClass::Regular;
};

enum class GridColumn { Value, GradNorm, Class };

std::vector<GridRecord> compute_grid(const GraphSpec& graph, const GridSpec& grid,
                                     const Tolerances& tol = {});

/// UTF-8 CSV, header "u1,u2,value,gradnorm,class", 17-significant-digit
/// floats, undefined gradients as the literal token "nan".
void write_grid_csv(const std::vector<GridRecord>& records, const std::string& path);

/// 8-bit binary PGM of one scalar column, min-max normalized over the
/// finite entries; non-finite entries map to 0.
void write_grid_pgm(const std::vector<GridRecord>& records, const GridSpec& grid,
                    GridColumn column, const std::string& path);

}  // namespace gradlab
