#include "dcd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "dcd/errors.hpp"

namespace dcd {

namespace {

long floor_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

long floor_div(long a, long n) { return (a - floor_mod(a, n)) / n; }

}  // namespace

GridFunction::GridFunction(int dim, Vec2 origin, double cell_size, Shape shape,
                           std::vector<double> values, Boundary bc)
    : dim_(dim), origin_(origin), h_(cell_size), shape_(shape), values_(std::move(values)), bc_(bc) {
  if (dim_ != 1 && dim_ != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ConfigError("cell size must be positive");
  if (dim_ == 1) {
    shape_[1] = 1;
    origin_[1] = 0.0;
  }
  if (shape_[0] == 0 || shape_[1] == 0) throw ConfigError("grid shape must be nonzero");
  if (values_.size() != shape_[0] * shape_[1]) {
    throw ShapeError("grid has " + std::to_string(values_.size()) + " values for " +
                     std::to_string(shape_[0] * shape_[1]) + " cells");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
  }
  if (!std::isfinite(bc_.value)) throw ConfigError("far-field value must be finite");
}

GridFunction GridFunction::filled(int dim, Vec2 origin, double cell_size, Shape shape, double value,
                                  Boundary bc) {
  if (dim == 1) shape[1] = 1;
  return GridFunction(dim, origin, cell_size, shape, std::vector<double>(shape[0] * shape[1], value),
                      bc);
}

GridFunction GridFunction::on_box(int dim, Interval box, std::size_t cells, double value,
                                  Boundary bc) {
  if (!(box.lo < box.hi)) throw ConfigError("grid box must have lo < hi");
  if (cells == 0) throw ConfigError("grid needs at least one cell");
  const double h = box.length() / static_cast<double>(cells);
  return filled(dim, {box.lo, dim == 2 ? box.lo : 0.0}, h, {cells, dim == 2 ? cells : 1}, value, bc);
}

double GridFunction::cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

Vec2 GridFunction::extent_end() const {
  return {origin_[0] + h_ * static_cast<double>(shape_[0]),
          dim_ == 2 ? origin_[1] + h_ * static_cast<double>(shape_[1]) : 0.0};
}

Vec2 GridFunction::center(std::size_t ix, std::size_t iy) const {
  return {origin_[0] + h_ * (static_cast<double>(ix) + 0.5),
          dim_ == 2 ? origin_[1] + h_ * (static_cast<double>(iy) + 0.5) : 0.0};
}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::integral() const {
  long double s = 0.0L;
  for (double v : values_) s += v;
  return static_cast<double>(s * cell_volume());
}

double GridFunction::mean() const {
  long double s = 0.0L;
  for (double v : values_) s += v;
  return static_cast<double>(s / static_cast<long double>(values_.size()));
}

bool GridFunction::same_geometry(const GridFunction& other) const {
  return dim_ == other.dim_ && shape_ == other.shape_ && h_ == other.h_ && origin_ == other.origin_ &&
         bc_.kind == other.bc_.kind;
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  return GridFunction(dim_, origin_, h_, shape_, std::move(values), bc_);
}

GridFunction GridFunction::shifted(long sx, long sy) const {
  if (!bc_.is_periodic()) throw ConfigError("cyclic shift needs a periodic grid");
  const long nx = static_cast<long>(shape_[0]), ny = static_cast<long>(shape_[1]);
  std::vector<double> out(values_.size());
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      const long ti = floor_mod(i + sx, nx), tj = floor_mod(j + sy, ny);
      out[static_cast<std::size_t>(tj * nx + ti)] = values_[static_cast<std::size_t>(j * nx + i)];
    }
  }
  return with_values(std::move(out));
}

// ---------------------------------------------------------------------------
// Windows

std::size_t Window::cells() const {
  std::size_t n = 0;
  for (int w : half_width) {
    if (w >= 0) n += static_cast<std::size_t>(2 * w + 1);
  }
  return n;
}

bool Window::contains(long mx, long my) const {
  const long r = rows();
  if (my < -r || my > r) return false;
  const int w = half_width[static_cast<std::size_t>(my + r)];
  return w >= 0 && std::abs(mx) <= w;
}

double Window::measure(double cell_size) const {
  return static_cast<double>(cells()) * (dim == 1 ? cell_size : cell_size * cell_size);
}

namespace {

// Largest m >= 0 with m^2 < bound2, where bound2 is a squared radius in
// cells shrunk by a relative 1e-9 so exact multiples of h stay outside.
long largest_inside(double bound2) {
  if (!(bound2 > 0.0)) return -1;
  long m = static_cast<long>(std::floor(std::sqrt(bound2)));
  while (m >= 0 && static_cast<double>(m) * static_cast<double>(m) >= bound2) --m;
  while (static_cast<double>(m + 1) * static_cast<double>(m + 1) < bound2) ++m;
  return m;
}

}  // namespace

Window Window::ball(int dim, double radius, double cell_size) {
  if (!(cell_size > 0.0)) throw ConfigError("cell size must be positive");
  if (!(radius >= cell_size)) throw ConfigError("window radius must be at least one cell");
  const double rho = radius / cell_size;
  const double r2 = rho * rho * (1.0 - 1e-9);
  Window w;
  w.dim = dim;
  const long reach = largest_inside(r2);
  if (dim == 1) {
    w.half_width = {static_cast<int>(reach)};
    return w;
  }
  for (long my = -reach; my <= reach; ++my) {
    const double left = r2 - static_cast<double>(my) * static_cast<double>(my);
    w.half_width.push_back(static_cast<int>(largest_inside(left)));
  }
  return w;
}

Window Window::box(int dim, Vec2 half_extent, double cell_size) {
  if (!(cell_size > 0.0)) throw ConfigError("cell size must be positive");
  for (int i = 0; i < dim; ++i) {
    if (!(half_extent[i] > 0.0) || !std::isfinite(half_extent[i])) {
      throw ConfigError("window half-extents must be positive");
    }
  }
  const auto reach = [&](double e) {
    const double rho = e / cell_size;
    return largest_inside(rho * rho * (1.0 - 1e-9));
  };
  const long wx = reach(half_extent[0]);
  if (wx < 0) throw ConfigError("window is narrower than one cell");
  Window w;
  w.dim = dim;
  if (dim == 1) {
    w.half_width = {static_cast<int>(wx)};
    return w;
  }
  const long wy = reach(half_extent[1]);
  if (wy < 0) throw ConfigError("window is narrower than one cell");
  w.half_width.assign(static_cast<std::size_t>(2 * wy + 1), static_cast<int>(wx));
  return w;
}

double window_norm(const GridFunction& g, const Window& w) {
  if (w.dim != g.dim()) throw ConfigError("window and grid dimensions differ");
  const bool periodic = g.bc().is_periodic();
  const long nx = static_cast<long>(g.nx()), ny = static_cast<long>(g.ny());
  const long wx = *std::max_element(w.half_width.begin(), w.half_width.end());
  const long wy = g.dim() == 2 ? w.rows() : 0;
  const double far = std::abs(g.bc().value);

  // Centers: every cell, or for far-field grids every position whose
  // window touches the box plus one position just beyond.
  const long cx_lo = periodic ? 0 : -wx - 1, cx_hi = periodic ? nx - 1 : nx + wx;
  const long cy_lo = (periodic || g.dim() == 1) ? 0 : -wy - 1;
  const long cy_hi = (periodic || g.dim() == 1) ? ny - 1 : ny + wy;

  // Padded |values| with prefix sums along x, in long double so window
  // differences do not depend on where the window sits.
  const long px = (cx_lo < 0 ? -cx_lo : 0) + wx, py = (cy_lo < 0 ? -cy_lo : 0) + wy;
  const long pnx = nx + 2 * px + (periodic ? 2 * wx : 0);
  const long pny = g.dim() == 2 ? ny + 2 * py + (periodic ? 2 * wy : 0) : 1;
  const long ox = periodic ? wx : px, oy = g.dim() == 2 ? (periodic ? wy : py) : 0;
  std::vector<long double> prefix(static_cast<std::size_t>(pny * (pnx + 1)), 0.0L);
  for (long b = 0; b < pny; ++b) {
    const long j = b - oy;
    long double acc = 0.0L;
    long double* row = &prefix[static_cast<std::size_t>(b * (pnx + 1))];
    for (long a = 0; a < pnx; ++a) {
      const long i = a - ox;
      double v;
      if (periodic) {
        v = std::abs(g.at(static_cast<std::size_t>(floor_mod(i, nx)),
                          static_cast<std::size_t>(floor_mod(j, ny))));
      } else if (i < 0 || i >= nx || j < 0 || j >= ny) {
        v = far;
      } else {
        v = std::abs(g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
      acc += v;
      row[a + 1] = acc;
    }
  }

  const long rows = g.dim() == 2 ? w.rows() : 0;
  long double best = 0.0L;
  for (long cy = cy_lo; cy <= cy_hi; ++cy) {
    for (long cx = cx_lo; cx <= cx_hi; ++cx) {
      long double s = 0.0L;
      for (long my = -rows; my <= rows; ++my) {
        const int hw = w.half_width[static_cast<std::size_t>(my + rows)];
        if (hw < 0) continue;
        const long b = cy + my + oy;
        const long a0 = cx - hw + ox, a1 = cx + hw + ox + 1;
        const long double* row = &prefix[static_cast<std::size_t>(b * (pnx + 1))];
        s += row[a1] - row[a0];
      }
      best = std::max(best, s);
    }
  }
  return static_cast<double>(best) * g.cell_volume();
}

double x_norm(const GridFunction& g, double radius) {
  return window_norm(g, Window::ball(g.dim(), radius, g.cell_size()));
}

double v_norm(const GridFunction& g, Vec2 half_extent) {
  return window_norm(g, Window::box(g.dim(), half_extent, g.cell_size()));
}

std::size_t covering_constant(const Window& target, const Window& cover) {
  if (target.dim != cover.dim) throw ConfigError("windows of different dimensions");
  // Largest q with the centered cube of side 2q+1 inside the cover.
  long q = -1;
  for (long c = 0;; ++c) {
    bool inside = true;
    for (long my = (cover.dim == 2 ? -c : 0); my <= (cover.dim == 2 ? c : 0) && inside; ++my) {
      inside = cover.contains(c, my) && cover.contains(-c, my);
    }
    if (!inside) break;
    q = c;
  }
  if (q < 0) throw ConfigError("cover window is empty");
  const long side = 2 * q + 1;
  std::set<std::pair<long, long>> tiles;
  const long rows = target.dim == 2 ? target.rows() : 0;
  for (long my = -rows; my <= rows; ++my) {
    const int hw = target.half_width[static_cast<std::size_t>(my + rows)];
    for (long mx = -hw; mx <= hw; ++mx) {
      tiles.insert({floor_div(mx + q, side), floor_div(my + q, side)});
    }
  }
  return tiles.size();
}

// ---------------------------------------------------------------------------

namespace {

void require_same(const GridFunction& u, const GridFunction& v) {
  if (!u.same_geometry(v)) throw ShapeError("grid functions live on different grids");
}

}  // namespace

double l1_plus(const GridFunction& u, const GridFunction& v) {
  require_same(u, v);
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += std::max(u[k] - v[k], 0.0);
  return s * u.cell_volume();
}

double l1_plus(const GridFunction& u, double k) {
  double s = 0.0;
  for (double v : u.values()) s += std::max(v - k, 0.0);
  return s * u.cell_volume();
}

double l1_distance(const GridFunction& u, const GridFunction& v) {
  require_same(u, v);
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += std::abs(u[k] - v[k]);
  return s * u.cell_volume();
}

double mean_deviation(const GridFunction& u, double level) {
  double s = 0.0;
  for (double v : u.values()) s += std::abs(v - level);
  return s / static_cast<double>(u.size());
}

double superlevel_measure(const GridFunction& g, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("superlevel threshold must be positive");
  if (!g.bc().is_periodic() && std::abs(g.bc().value) > lambda) return kInfiniteMeasure;
  std::size_t n = 0;
  for (double v : g.values()) n += std::abs(v) > lambda;
  return static_cast<double>(n) * g.cell_volume();
}

GridFunction shift_mean(const GridFunction& g, double target) {
  if (!g.bc().is_periodic()) throw ConfigError("shift_mean needs a periodic grid");
  const double shift = target - g.mean();
  std::vector<double> out = g.values();
  for (double& v : out) v += shift;
  return g.with_values(std::move(out));
}

double boundary_deviation(const GridFunction& g) {
  if (g.bc().is_periodic()) return 0.0;
  const double c = g.bc().value;
  const std::size_t nx = g.nx(), ny = g.ny();
  double dev = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    dev = std::max({dev, std::abs(g.at(0, j) - c), std::abs(g.at(nx - 1, j) - c)});
  }
  if (g.dim() == 2) {
    for (std::size_t i = 0; i < nx; ++i) {
      dev = std::max({dev, std::abs(g.at(i, 0) - c), std::abs(g.at(i, ny - 1) - c)});
    }
  }
  return dev;
}

}  // namespace dcd
