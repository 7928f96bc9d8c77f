#pragma once

#include "dcd/grid.hpp"
#include "dcd/lattice.hpp"

namespace dcd {

struct Periodization {
  GridFunction grid;  // periodic, one fundamental cell of r L
  double r = 0.0;     // scale after snapping r * basis to whole cells
  double mean = 0.0;  // M_r
};

// sup (resp. inf) over e in L of u0(x + r e), sampled on a periodic grid
// with the cell size of u0 and cells aligned with u0's cells. u0 must be
// FarField with value 0, and the lattice axis-aligned so the fundamental
// cell of r L is a box. r is snapped to the nearest value making every
// period a whole number of cells; the period box is centered at 0 up to
// half a cell.
Periodization periodize_sup(const GridFunction& u0, const LatticeSpec& lattice, double r);
Periodization periodize_inf(const GridFunction& u0, const LatticeSpec& lattice, double r);

// Value of a periodic grid function at the cell of `target` with the same
// center (both grids share cell size and alignment).
GridFunction sample_periodic(const GridFunction& periodic, const GridFunction& target);

}  // namespace dcd
