#include "gradlab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace gradlab {

std::vector<GridRecord> compute_grid(const GraphSpec& graph, const GridSpec& grid,
                                     const Tolerances& tol) {
  tol.validate();
  if (grid.nx < 2 || grid.ny < 2)
    throw std::invalid_argument("compute_grid: nx and ny must be >= 2");
  if (!(grid.lo1 < grid.hi1) || !(grid.lo2 < grid.hi2))
    throw std::invalid_argument("compute_grid: lo must be < hi");
  if (graph.ambient_dim != 2)
    throw DimensionError("compute_grid: 2-D graphs only");

  ProjectionOptions opts;
  opts.tol_residual = tol.tol_residual;
  opts.tol_equal = tol.tol_equal;

  const double dx = (grid.hi1 - grid.lo1) / (grid.nx - 1);
  const double dy = (grid.hi2 - grid.lo2) / (grid.ny - 1);
  std::vector<GridRecord> records;
  records.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);

  Vec u(2);
  // Row 0 at max u2 so record order matches PGM pixel order.
  for (int iy = 0; iy < grid.ny; ++iy) {
    u[1] = grid.hi2 - iy * dy;
    for (int ix = 0; ix < grid.nx; ++ix) {
      u[0] = grid.lo1 + ix * dx;
      GridRecord rec;
      rec.u1 = u[0];
      rec.u2 = u[1];
      const ProjectionResult pr = project_to_graph(graph, u, opts);
      rec.value = pr.value;
      if (pr.value > tol.singular_margin && !pr.multiple) {
        rec.gradnorm = ((u - pr.foot) / pr.value).norm();
      } else {
        rec.gradnorm = std::numeric_limits<double>::quiet_NaN();
      }
      if (pr.value <= tol.singular_margin) {
        rec.cls = SingularClass::OnGraph;
      } else {
        const double d = parabola_discriminant(u);
        if (d <= tol.singular_margin) {
          rec.cls = SingularClass::MultiRoot;
        } else if (std::abs(std::abs(u[0]) - 4.0 * std::sqrt(d)) <= tol.singular_margin) {
          rec.cls = SingularClass::CuspCondition;
        } else {
          rec.cls = SingularClass::Regular;
        }
      }
      records.push_back(rec);
    }
  }
  return records;
}

void write_grid_csv(const std::vector<GridRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid_csv: cannot open '" + path + "'");
  out << "u1,u2,value,gradnorm,class\n";
  char buf[160];
  for (const GridRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%s\n", r.u1, r.u2, r.value,
                  r.gradnorm, to_string(r.cls));
    out << buf;
  }
  if (!out) throw std::runtime_error("write_grid_csv: write failed for '" + path + "'");
}

void write_grid_pgm(const std::vector<GridRecord>& records, const GridSpec& grid,
                    GridColumn column, const std::string& path) {
  if (records.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
    throw std::invalid_argument("write_grid_pgm: record count does not match grid");
  auto scalar = [column](const GridRecord& r) -> double {
    switch (column) {
      case GridColumn::Value: return r.value;
      case GridColumn::GradNorm: return r.gradnorm;
      case GridColumn::Class: return static_cast<double>(r.cls);
    }
    return 0;
  };

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const GridRecord& r : records) {
    const double v = scalar(r);
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double range = (hi > lo) ? (hi - lo) : 0.0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid_pgm: cannot open '" + path + "'");
  out << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
  for (const GridRecord& r : records) {
    const double v = scalar(r);
    unsigned char byte = 0;
    if (std::isfinite(v) && range > 0) {
      byte = static_cast<unsigned char>(std::lround(255.0 * (v - lo) / range));
    }
    out.put(static_cast<char>(byte));
  }
  if (!out) throw std::runtime_error("write_grid_pgm: write failed for '" + path + "'");
}

}  // namespace gradlab
