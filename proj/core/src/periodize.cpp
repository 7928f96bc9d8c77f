#include "dcd/periodize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dcd/errors.hpp"

namespace dcd {

namespace {

long floor_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Whole-cell offset between two aligned origins, checked to 1e-9 cells.
long cell_offset(double from, double to, double h) {
  const double cells = (to - from) / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-6) {
    throw ConfigError("grids are not aligned to a common cell lattice");
  }
  return static_cast<long>(rounded);
}

Periodization periodize(const GridFunction& u0, const LatticeSpec& lattice, double r,
                        const std::function<double(double, double)>& pick) {
  if (u0.bc().is_periodic() || u0.bc().value != 0.0) {
    throw ConfigError("periodization needs FarField data with far-field value 0");
  }
  if (lattice.dim() != u0.dim()) throw ConfigError("lattice and grid dimensions differ");
  if (!lattice.axis_aligned()) {
    throw ConfigError("periodization on a grid needs an axis-aligned lattice basis");
  }
  if (!(r > 0.0)) throw ConfigError("periodization scale r must be positive");
  const double h = u0.cell_size();
  const int dim = u0.dim();

  // Snap r so the first period is a whole number of cells, then check the
  // others follow.
  const double b0 = std::abs(lattice.basis()[0]);
  const double cells0 = std::max(1.0, std::round(r * b0 / h));
  const double rs = cells0 * h / b0;
  Shape shape{static_cast<std::size_t>(cells0), 1};
  if (dim == 2) {
    const double b1 = std::abs(lattice.basis()[3]);
    const double c1 = rs * b1 / h;
    if (std::abs(c1 - std::round(c1)) > 1e-9 * std::max(1.0, c1) || std::round(c1) < 1.0) {
      throw ConfigError("r * basis is not a whole number of cells on every axis after snapping");
    }
    shape[1] = static_cast<std::size_t>(std::round(c1));
  }

  Vec2 origin{0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    const double period = h * static_cast<double>(shape[a]);
    origin[a] = u0.origin()[a] + std::round((-0.5 * period - u0.origin()[a]) / h) * h;
  }

  // Cells of the period box that no translate of u0's box reaches see the
  // far field, 0; so start from 0 and fold every cell of u0 in.
  std::vector<double> values(shape[0] * shape[1], 0.0);
  const long ox = cell_offset(origin[0], u0.origin()[0], h);
  const long oy = dim == 2 ? cell_offset(origin[1], u0.origin()[1], h) : 0;
  const long px = static_cast<long>(shape[0]), py = static_cast<long>(shape[1]);
  for (std::size_t j = 0; j < u0.ny(); ++j) {
    for (std::size_t i = 0; i < u0.nx(); ++i) {
      const long ti = floor_mod(static_cast<long>(i) + ox, px);
      const long tj = dim == 2 ? floor_mod(static_cast<long>(j) + oy, py) : 0;
      double& slot = values[static_cast<std::size_t>(tj * px + ti)];
      slot = pick(slot, u0.at(i, j));
    }
  }
  GridFunction grid(dim, origin, h, shape, std::move(values), Boundary::periodic());
  const double mean = grid.mean();
  return {std::move(grid), rs, mean};
}

}  // namespace

Periodization periodize_sup(const GridFunction& u0, const LatticeSpec& lattice, double r) {
  return periodize(u0, lattice, r, [](double a, double b) { return std::max(a, b); });
}

Periodization periodize_inf(const GridFunction& u0, const LatticeSpec& lattice, double r) {
  return periodize(u0, lattice, r, [](double a, double b) { return std::min(a, b); });
}

GridFunction sample_periodic(const GridFunction& periodic, const GridFunction& target) {
  if (!periodic.bc().is_periodic()) throw ConfigError("sample_periodic needs a periodic source");
  if (periodic.dim() != target.dim() || periodic.cell_size() != target.cell_size()) {
    throw ShapeError("periodic source and target differ in dimension or cell size");
  }
  const double h = target.cell_size();
  const long ox = cell_offset(periodic.origin()[0], target.origin()[0], h);
  const long oy = target.dim() == 2 ? cell_offset(periodic.origin()[1], target.origin()[1], h) : 0;
  const long px = static_cast<long>(periodic.nx()), py = static_cast<long>(periodic.ny());
  std::vector<double> out(target.size());
  for (std::size_t j = 0; j < target.ny(); ++j) {
    for (std::size_t i = 0; i < target.nx(); ++i) {
      const long si = floor_mod(static_cast<long>(i) + ox, px);
      const long sj = target.dim() == 2 ? floor_mod(static_cast<long>(j) + oy, py) : 0;
      out[j * target.nx() + i] = periodic.at(static_cast<std::size_t>(si), static_cast<std::size_t>(sj));
    }
  }
  return target.with_values(std::move(out));
}

}  // namespace dcd
