#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dcd/grid.hpp"

namespace dcd {

struct GridSpec {
  int dim = 1;
  Interval x{0.0, 1.0};
  Interval y{0.0, 1.0};
  std::size_t nx = 100;
  std::size_t ny = 1;
  Boundary bc = Boundary::far_field(0.0);

  GridFunction make(double value = 0.0) const;
};

// Analytic families; which fields matter depends on `family`:
//   constant: value
//   box:      lo, hi, height             (height times an indicator, a square in 2D)
//   sine:     mean, amplitude, kx, ky    (mean + A sin(2 pi (kx x/Lx + ky y/Ly)))
//   bump:     mass, center, radius       (cosine bump; radial in 2D)
//   example1: n_blocks
//   random:   seed, lo, hi, piece, support_lo, support_hi
//             (piecewise constant on pieces of length `piece` inside the
//             support, far-field value outside)
//   snapshot: path                       (grid CSV with sidecar)
struct InitialSpec {
  std::string family = "constant";
  double value = 0.0;
  double lo = 0.0, hi = 1.0;
  double height = 1.0;
  double mean = 0.0, amplitude = 0.5;
  int kx = 1, ky = 0;
  double mass = 1.0;
  Vec2 center{};
  double radius = 1.0;
  int n_blocks = 3;
  std::optional<std::uint64_t> seed;
  double piece = 0.25;
  double support_lo = -1.0, support_hi = 1.0;
  std::string path;
};

// Cell averages by the midpoint rule on 4 subsamples per axis.
GridFunction build_initial(const InitialSpec& spec, const GridSpec& grid);

// Uniform double in [0, 1) from the top 53 bits of a 64-bit word, so the
// same seed gives the same stream on every platform.
double unit_uniform(std::uint64_t bits);

}  // namespace dcd
