#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "dcd/model.hpp"

namespace dcd {

enum class BoundaryKind { kPeriodic, kFarField };

// Periodic: the box is one fundamental cell. FarField: the box is a window
// into R^dim and the solution equals `value` everywhere outside it.
struct Boundary {
  BoundaryKind kind = BoundaryKind::kFarField;
  double value = 0.0;

  static Boundary periodic() { return {BoundaryKind::kPeriodic, 0.0}; }
  static Boundary far_field(double v = 0.0) { return {BoundaryKind::kFarField, v}; }
  bool is_periodic() const { return kind == BoundaryKind::kPeriodic; }
  friend bool operator==(const Boundary&, const Boundary&) = default;
};

using Shape = std::array<std::size_t, 2>;

// Cell averages on a uniform mesh with equal spacing per axis. Values are
// stored with x fastest: index = iy * nx + ix. In one dimension ny == 1.
class GridFunction {
 public:
  GridFunction(int dim, Vec2 origin, double cell_size, Shape shape, std::vector<double> values,
               Boundary bc);
  static GridFunction filled(int dim, Vec2 origin, double cell_size, Shape shape, double value,
                             Boundary bc);
  // Uniform mesh covering [lo, hi] (per axis) with `cells` cells per axis.
  static GridFunction on_box(int dim, Interval box, std::size_t cells, double value, Boundary bc);

  int dim() const { return dim_; }
  const Vec2& origin() const { return origin_; }
  double cell_size() const { return h_; }
  const Shape& shape() const { return shape_; }
  std::size_t nx() const { return shape_[0]; }
  std::size_t ny() const { return shape_[1]; }
  std::size_t size() const { return values_.size(); }
  const Boundary& bc() const { return bc_; }
  double cell_volume() const;
  double volume() const { return cell_volume() * static_cast<double>(size()); }
  // Upper corner of the box.
  Vec2 extent_end() const;

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double at(std::size_t ix, std::size_t iy = 0) const { return values_[iy * shape_[0] + ix]; }
  Vec2 center(std::size_t ix, std::size_t iy = 0) const;
  Vec2 center_of(std::size_t k) const { return center(k % shape_[0], k / shape_[0]); }

  double min() const;
  double max() const;
  // Sum of value * cell volume.
  double integral() const;
  double mean() const;

  bool same_geometry(const GridFunction& other) const;
  GridFunction with_values(std::vector<double> values) const;
  // Cyclic shift by whole cells (periodic grids only).
  GridFunction shifted(long sx, long sy = 0) const;

 private:
  int dim_;
  Vec2 origin_;
  double h_;
  Shape shape_;
  std::vector<double> values_;
  Boundary bc_;
};

// Discrete window: the offsets (mx, my) of the cells counted around a
// center cell, stored as a half-width in x for each row offset in y.
struct Window {
  int dim = 1;
  std::vector<int> half_width;  // index my + rows(), -1 marks an empty row

  int rows() const { return static_cast<int>(half_width.size() / 2); }
  std::size_t cells() const;
  bool contains(long mx, long my) const;
  double measure(double cell_size) const;

  // Cells whose centers lie at distance < radius from the window center.
  static Window ball(int dim, double radius, double cell_size);
  // Cells with |m_i| h < half_extent[i] on every axis.
  static Window box(int dim, Vec2 half_extent, double cell_size);
};

// Max over window centers of sum |value| * cell volume inside the window.
// Centers run over every cell plus, for FarField grids, every exterior
// position whose window still touches the box and one window lying fully
// in the far field. Periodic windows wrap.
double window_norm(const GridFunction& g, const Window& w);
double x_norm(const GridFunction& g, double radius = 1.0);
double v_norm(const GridFunction& g, Vec2 half_extent);

// Number of translates of the largest centered cube inside `cover` needed
// to tile `target` (cube translates on the cube-side lattice meeting the
// target). window_norm(g, target) <= covering_constant * window_norm(g, cover).
std::size_t covering_constant(const Window& target, const Window& cover);

// sum max(u - v, 0) * cell volume.
double l1_plus(const GridFunction& u, const GridFunction& v);
// sum max(u - k, 0) * cell volume.
double l1_plus(const GridFunction& u, double k);
double l1_distance(const GridFunction& u, const GridFunction& v);
// Per unit volume: sum |u - level| * cell volume / volume.
double mean_deviation(const GridFunction& u, double level);

inline constexpr double kInfiniteMeasure = std::numeric_limits<double>::infinity();
// Measure of {|g| > lambda}; kInfiniteMeasure when the far field exceeds it.
double superlevel_measure(const GridFunction& g, double lambda);

// Adds target - mean(g) (periodic grids only).
GridFunction shift_mean(const GridFunction& g, double target);

// Largest deviation from the far-field value over the outermost ring of
// cells (FarField grids), 0 for periodic grids.
double boundary_deviation(const GridFunction& g);

}  // namespace dcd
